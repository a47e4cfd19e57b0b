#include "rbmlab/estimators.hpp"

#include "rbmlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbmlab {

namespace {

struct Central {
    double mean, m2, m3, m4;
};

Central central_moments(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    return {mean, m2 / n, m3 / n, m4 / n};
}

double unbiased_variance(std::span<const double> v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

MomentSummary estimate_moments(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("estimate_moments: need at least 2 samples");
    const Central c = central_moments(values);
    MomentSummary out;
    out.n = n;
    out.mean = c.mean;
    out.variance = c.m2 * static_cast<double>(n) / static_cast<double>(n - 1);
    if (c.m2 == 0.0)
        throw sample_error("estimate_moments: all samples equal, higher moments undefined");
    out.skewness = c.m3 / std::pow(c.m2, 1.5);
    out.excess_kurtosis = c.m4 / (c.m2 * c.m2) - 3.0;

    const std::size_t nb = std::min(moment_batches, n);
    const std::size_t per = n / nb;
    std::vector<double> bmean(nb), bvar(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const auto batch = values.subspan(b * per, per);
        double m = 0.0;
        for (double x : batch) m += x;
        m /= static_cast<double>(per);
        bmean[b] = m;
        bvar[b] = per > 1 ? unbiased_variance(batch, m) : 0.0;
    }
    auto se = [nb](const std::vector<double>& xs) {
        double m = 0.0;
        for (double x : xs) m += x;
        m /= static_cast<double>(nb);
        double s = 0.0;
        for (double x : xs) s += (x - m) * (x - m);
        return nb > 1 ? std::sqrt(s / static_cast<double>(nb - 1) / static_cast<double>(nb)) : 0.0;
    };
    out.std_error_mean = se(bmean);
    out.std_error_variance = per > 1 ? se(bvar) : 0.0;
    return out;
}

std::vector<double> extract(std::span<const FunctionalSample> samples, Functional which) {
    std::vector<double> v(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) v[i] = value_of(samples[i], which);
    return v;
}

MomentSummary estimate_moments(std::span<const FunctionalSample> samples, Functional which) {
    const auto v = extract(samples, which);
    return estimate_moments(v);
}

Histogram estimate_density(std::span<const double> values, std::span<const double> edges) {
    if (edges.size() < 2) throw std::invalid_argument("estimate_density: need at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument("estimate_density: edges must be strictly increasing");
    Histogram h;
    h.edges.assign(edges.begin(), edges.end());
    h.counts.assign(edges.size() - 1, 0);
    for (double x : values) {
        if (x < edges.front() || x > edges.back()) {
            ++h.outside;
            continue;
        }
        auto it = std::upper_bound(edges.begin(), edges.end(), x);
        std::size_t bin = static_cast<std::size_t>(it - edges.begin());
        bin = bin == 0 ? 0 : bin - 1;
        if (bin >= h.counts.size()) bin = h.counts.size() - 1;
        ++h.counts[bin];
        ++h.n;
    }
    if (static_cast<double>(h.outside) > 1e-3 * static_cast<double>(values.size()))
        throw sample_error("estimate_density: more than 0.1% of samples outside the edges");
    h.normalized_density.resize(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double w = edges[i + 1] - edges[i];
        h.normalized_density[i] =
            h.n > 0 ? static_cast<double>(h.counts[i]) / (static_cast<double>(h.n) * w) : 0.0;
    }
    return h;
}

Histogram estimate_density(std::span<const FunctionalSample> samples, Functional which,
                           std::span<const double> edges) {
    const auto v = extract(samples, which);
    return estimate_density(v, edges);
}

double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_distance_two_sample(std::span<const double> x, std::span<const double> y) {
    std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= t) ++i;
        while (j < b.size() && b[j] <= t) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace rbmlab
