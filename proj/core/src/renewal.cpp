#include "rbmlab/renewal.hpp"

#include "rbmlab/analytic.hpp"
#include "rbmlab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rbmlab::renewal {

double airy_h(double x) { return -std::cbrt(2.0) * specfun::airy_int_over_prime(x); }

LaplaceGF free_gf_occupation() {
    LaplaceGF g;
    g.valid = [](double k, double s) { return s > 0.0 && s > k; };
    g.eval = [](double k, double s) { return 1.0 / std::sqrt(s * (s - k)); };
    return g;
}

LaplaceGF free_gf_absarea() {
    LaplaceGF g;
    g.valid = [](double k, double s) {
        if (!(k < 0.0)) return false;
        return std::cbrt(2.0) * s / std::cbrt(k * k) > specfun::airy_prime_first_zero();
    };
    g.eval = [](double k, double s) {
        const double q = std::cbrt(k * k);
        return airy_h(std::cbrt(2.0) * s / q) / q;
    };
    return g;
}

namespace {

void check_order(int order, int cap, const char* who) {
    if (order < 0 || order > cap)
        throw std::domain_error(std::string(who) + ": order must be in [0, " + std::to_string(cap) + "]");
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

PowerSeriesLT free_series_occupation(int order) {
    check_order(order, occupation_series_cap, "free_series_occupation");
    PowerSeriesLT p;
    p.order = order;
    for (int n = 0; n <= order; ++n) {
        // binom(2n, n) / 4^n
        const double c = std::exp(log_factorial(2 * n) - 2.0 * log_factorial(n) - n * std::log(4.0));
        p.coeff.push_back([c, n](cplx s) { return c * std::pow(s, -(n + 1.0)); });
    }
    return p;
}

PowerSeriesLT free_series_area(int order) {
    check_order(order, area_series_cap, "free_series_area");
    PowerSeriesLT p;
    p.order = order;
    for (int n = 0; n <= order; ++n) {
        if (n % 2) {
            p.coeff.push_back([](cplx) { return cplx(0.0, 0.0); });
            continue;
        }
        const int j = n / 2;
        // (3j)! / (6^j j!)
        const double c = std::exp(log_factorial(3 * j) - j * std::log(6.0) - log_factorial(j));
        p.coeff.push_back([c, j](cplx s) { return c * std::pow(s, -(3.0 * j + 1.0)); });
    }
    return p;
}

PowerSeriesLT free_series_absarea(int order) {
    check_order(order, absarea_series_cap, "free_series_absarea");
    const double a = analytic::absarea_free_mean * std::tgamma(2.5);
    const double b = analytic::absarea_free_second;
    PowerSeriesLT p;
    p.order = order;
    p.coeff.push_back([](cplx s) { return 1.0 / s; });
    if (order >= 1) p.coeff.push_back([a](cplx s) { return a * std::pow(s, -2.5); });
    if (order >= 2) p.coeff.push_back([b](cplx s) { return 3.0 * b * std::pow(s, -4.0); });
    return p;
}

LaplaceGF renewal_map(const LaplaceGF& g0, double r) {
    if (!(r > 0.0)) throw std::domain_error("renewal_map: r must be positive");
    LaplaceGF g;
    g.valid = [g0, r](double k, double s) {
        if (!g0.valid(k, s + r)) return false;
        return r * g0.eval(k, s + r) < 1.0;
    };
    g.eval = [g0, r](double k, double s) {
        const double v = g0.eval(k, s + r);
        return v / (1.0 - r * v);
    };
    return g;
}

PowerSeriesLT renewal_series(const PowerSeriesLT& g0, double r, int order) {
    if (!(r > 0.0)) throw std::domain_error("renewal_series: r must be positive");
    if (order < 0 || order > g0.order)
        throw std::domain_error("renewal_series: order exceeds the input series");
    PowerSeriesLT out;
    out.order = order;
    out.s_min = std::max(0.0, g0.s_min - r);
    for (int n = 0; n <= order; ++n) {
        out.coeff.push_back([g0, r, n](cplx s) {
            // c_j(s + r), then q = c / (1 - r c) term by term
            std::vector<cplx> c(n + 1), q(n + 1);
            for (int j = 0; j <= n; ++j) c[j] = g0.coeff[j](s + r);
            const cplx d0 = 1.0 - r * c[0];
            for (int m = 0; m <= n; ++m) {
                cplx acc = c[m];
                for (int j = 1; j <= m; ++j) acc += r * c[j] * q[m - j];
                q[m] = acc / d0;
            }
            return q[n];
        });
    }
    return out;
}

std::vector<double> moments_via_renewal(MomentFunctional functional, double r, double T,
                                        int max_order) {
    if (!(T > 0.0)) throw std::domain_error("moments_via_renewal: T must be positive");
    if (max_order < 1) throw std::domain_error("moments_via_renewal: max_order must be >= 1");
    PowerSeriesLT g0;
    switch (functional) {
        case MomentFunctional::occupation: g0 = free_series_occupation(max_order); break;
        case MomentFunctional::area: g0 = free_series_area(max_order); break;
        case MomentFunctional::absarea: g0 = free_series_absarea(max_order); break;
    }
    const PowerSeriesLT gr = renewal_series(g0, r, max_order);
    std::vector<double> out;
    double fact = 1.0;
    for (int n = 1; n <= max_order; ++n) {
        fact *= n;
        const auto& cn = gr.coeff[n];
        out.push_back(fact * talbot(cn, T, talbot_points));
    }
    return out;
}

}  // namespace rbmlab::renewal
