#include "rbmlab/ldp.hpp"

#include "rbmlab/analytic.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rbmlab::ldp {

RateFunctionCurve legendre_samples(const std::vector<double>& k, const std::vector<double>& lambda,
                                   std::optional<double> flat_value) {
    if (k.size() != lambda.size() || k.size() < 3)
        throw std::invalid_argument("legendre: need at least three (k, lambda) samples");
    for (std::size_t i = 1; i < k.size(); ++i)
        if (!(k[i] > k[i - 1])) throw std::invalid_argument("legendre: k grid must be increasing");
    RateFunctionCurve curve;
    curve.k_grid = k;
    struct Point {
        double c, chi, k;
    };
    std::vector<Point> pts;
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
        const double hm = k[i] - k[i - 1], hp = k[i + 1] - k[i];
        const double denom = hm * hp * (hm + hp);
        const double second = 2.0 * (hm * lambda[i + 1] - (hm + hp) * lambda[i] + hp * lambda[i - 1]) / denom;
        if (second < -1e-6) throw std::domain_error("legendre: SCGF samples are not convex");
        const double c = (hm * hm * lambda[i + 1] - hp * hp * lambda[i - 1] + (hp * hp - hm * hm) * lambda[i]) / denom;
        pts.push_back({c, k[i] * c - lambda[i], k[i]});
    }
    std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.c < b.c; });
    for (const Point& p : pts) {
        if (flat_value && p.c >= *flat_value) continue;
        curve.phi.push_back(p.c);
        curve.chi.push_back(p.chi);
        curve.slope.push_back(p.k);
    }
    if (flat_value) {
        curve.phi.push_back(*flat_value);
        curve.chi.push_back(0.0);
        curve.slope.push_back(0.0);
        curve.flat_from = *flat_value;
    }
    return curve;
}

RateFunctionCurve legendre(const std::function<double(double)>& scgf, const std::vector<double>& k_grid,
                           std::optional<double> flat_value) {
    std::vector<double> lambda(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) lambda[i] = scgf(k_grid[i]);
    return legendre_samples(k_grid, lambda, flat_value);
}

std::vector<double> absarea_k_grid(double r, int n) {
    if (n < 3) throw std::invalid_argument("absarea_k_grid: need at least 3 points");
    const double scale = r > 0.0 ? r * std::sqrt(r) : 1.0;
    std::vector<double> k(n);
    const double l0 = std::log(1e4), l1 = std::log(1e-4);
    for (int i = 0; i < n; ++i) k[i] = -scale * std::exp(l0 + (l1 - l0) * i / (n - 1));
    return k;
}

namespace {

RateFunctionCurve chi_c_curve_on(double r, const std::vector<double>& k, unsigned threads) {
    std::vector<double> lambda(k.size());
    if (r == 0.0) {
        for (std::size_t i = 0; i < k.size(); ++i) lambda[i] = analytic::scgf_c_free(k[i]);
        return legendre_samples(k, lambda);
    }
    detail::parallel_for(k.size(), threads, [&](std::size_t i) { lambda[i] = scgf_c(k[i], r); });
    return legendre_samples(k, lambda, analytic::absarea_mean_rate(r));
}

}  // namespace

RateFunctionCurve chi_c_curve(double r, unsigned threads) {
    if (!(r >= 0.0)) throw std::domain_error("chi_c_curve: r must be nonnegative");
    return chi_c_curve_on(r, absarea_k_grid(r), threads);
}

ExtendedReal interpolate_curve(const RateFunctionCurve& curve, double phi) {
    if (curve.flat_from && phi >= *curve.flat_from) return 0.0;
    const auto& x = curve.phi;
    if (x.empty() || phi < x.front() || phi > x.back())
        throw std::domain_error("interpolate_curve: phi outside the tabulated range");
    auto it = std::upper_bound(x.begin(), x.end(), phi);
    std::size_t i = it == x.end() ? x.size() - 2 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (phi - x[i]) / h;
    // cubic Hermite with the exact slopes d chi / d phi = k
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * curve.chi[i] + (t3 - 2 * t2 + t) * h * curve.slope[i] +
           (-2 * t3 + 3 * t2) * curve.chi[i + 1] + (t3 - t2) * h * curve.slope[i + 1];
}

ExtendedReal chi_c(double c, double r) {
    if (!(r > 0.0)) throw std::domain_error("chi_c: r must be positive");
    if (!(c > 0.0)) return ExtendedReal::infinity();
    const double cstar = analytic::absarea_mean_rate(r);
    if (c >= cstar) return 0.0;
    RateFunctionCurve curve = chi_c_curve_on(r, absarea_k_grid(r), 1);
    if (c < curve.phi.front()) {
        // c scales like |k|^{-1/3}; extend the grid toward -inf
        const double widen = std::pow(curve.phi.front() / c, 3.0) * 10.0;
        const double scale = r * std::sqrt(r);
        const int n = 200 + static_cast<int>(40.0 * std::log10(widen));
        std::vector<double> kw(n);
        const double l0 = std::log(1e4 * widen), l1 = std::log(1e-4);
        for (int i = 0; i < n; ++i) kw[i] = -scale * std::exp(l0 + (l1 - l0) * i / (n - 1));
        curve = chi_c_curve_on(r, kw, 1);
    }
    return interpolate_curve(curve, c);
}

}  // namespace rbmlab::ldp
