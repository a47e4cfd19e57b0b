#pragma once

#include "rbmlab/simulate.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rbmlab {

struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double std_error_mean = 0.0;      // batch means
    double std_error_variance = 0.0;  // batch variances
};

struct Histogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    std::vector<double> normalized_density;
    std::size_t n = 0;        // samples inside the edges
    std::size_t outside = 0;  // samples dropped outside the edges
};

inline constexpr std::size_t moment_batches = 50;

// Throws std::invalid_argument for n < 2 and sample_error when all values
// coincide (skewness and kurtosis undefined).
MomentSummary estimate_moments(std::span<const double> values);
MomentSummary estimate_moments(std::span<const FunctionalSample> samples, Functional which);

// Throws std::invalid_argument for non-increasing edges and sample_error
// when more than 0.1% of the samples fall outside.
Histogram estimate_density(std::span<const double> values, std::span<const double> edges);
Histogram estimate_density(std::span<const FunctionalSample> samples, Functional which,
                           std::span<const double> edges);

std::vector<double> extract(std::span<const FunctionalSample> samples, Functional which);

// sup |F_n - F|; sorts a copy of the values.
double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf);
double ks_distance_two_sample(std::span<const double> x, std::span<const double> y);

}  // namespace rbmlab
