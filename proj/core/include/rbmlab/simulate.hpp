#pragma once

#include "rbmlab/random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rbmlab {

struct SimConfig {
    double r = 1.0;        // reset rate
    double T = 1.0;        // horizon
    double dt = 0.0;       // inner grid step; 0 selects the default
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // worker cap; never changes results
    std::size_t memory_cap_bytes = std::size_t{1} << 30;

    static constexpr double x_star = 0.0;

    // min(1e-3 T, 0.1 / r)
    double default_dt() const;
    double step() const { return dt > 0.0 ? dt : default_dt(); }
    // Throws std::invalid_argument naming the violated condition.
    void validate() const;
};

struct FunctionalSample {
    double a = 0.0;      // occupation time of [0, inf)
    double b = 0.0;      // area
    double c = 0.0;      // absolute area
    double x_end = 0.0;  // terminal position
    std::uint32_t n_resets = 0;
};

enum class Functional { occupation, area, absarea, endpoint };

double value_of(const FunctionalSample& s, Functional f);
const char* name_of(Functional f);
Functional functional_from_name(const std::string& name);

// Poisson epochs of intensity r on (0, T); empty for r == 0.
std::vector<double> sample_reset_epochs(RngStream& stream, double r, double T);
void sample_reset_epochs(RngStream& stream, double r, double T, std::vector<double>& out);

// Walks one path through the given reset epochs, drawing standard normals
// from `normal`. Exposed for tests that need to control the increments.
template <class NormalSource>
FunctionalSample integrate_path(double T, double dt, std::span<const double> resets,
                                NormalSource&& normal) {
    FunctionalSample s;
    s.n_resets = static_cast<std::uint32_t>(resets.size());
    const double sq_dt = std::sqrt(dt);
    double x = SimConfig::x_star;
    double seg_start = 0.0;
    auto step = [&](double h, double sq_h) {
        const double y = x + sq_h * normal();
        if (x + y >= 0.0) s.a += h;
        s.b += 0.5 * h * (x + y);
        s.c += 0.5 * h * (std::fabs(x) + std::fabs(y));
        x = y;
    };
    for (std::size_t i = 0; i <= resets.size(); ++i) {
        const double seg_end = i < resets.size() ? resets[i] : T;
        const double len = seg_end - seg_start;
        const auto n_full = static_cast<std::uint64_t>(len / dt);
        for (std::uint64_t j = 0; j < n_full; ++j) step(dt, sq_dt);
        const double rem = len - static_cast<double>(n_full) * dt;
        if (rem > 1e-12 * dt) step(rem, std::sqrt(rem));
        if (i < resets.size()) x = SimConfig::x_star;
        seg_start = seg_end;
    }
    s.x_end = x;
    return s;
}

FunctionalSample simulate_path(const SimConfig& config, RngStream& stream);

// Path i draws from RngStream(seed, i). Results do not depend on the
// thread count. Throws resource_error when the sample list would exceed
// config.memory_cap_bytes; use for_each_chunk instead in that case.
std::vector<FunctionalSample> run_ensemble(const SimConfig& config);

// Streams the ensemble in consecutive path chunks. The consumer is called
// on the calling thread, in path order, with the first path index of the
// chunk.
void for_each_chunk(const SimConfig& config, std::size_t chunk_size,
                    const std::function<void(std::size_t first, std::span<const FunctionalSample>)>& consumer);

}  // namespace rbmlab
