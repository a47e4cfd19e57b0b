#include "rbmlab/simulate.hpp"

#include "rbmlab/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rbmlab {

double SimConfig::default_dt() const {
    const double by_horizon = 1e-3 * T;
    return r > 0.0 ? std::min(by_horizon, 0.1 / r) : by_horizon;
}

void SimConfig::validate() const {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("reset rate r must be finite and >= 0");
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("horizon T must be finite and > 0");
    if (dt < 0.0 || !std::isfinite(dt))
        throw std::invalid_argument("dt must be > 0 (or 0 for the default)");
    if (n_paths < 1)
        throw std::invalid_argument("n_paths must be >= 1");
    const double h = step();
    if (h > T / 10.0 * (1.0 + 1e-12))
        throw std::invalid_argument("dt must not exceed T/10");
    if (r * h > 0.1 * (1.0 + 1e-12))
        throw std::invalid_argument("r*dt must not exceed 0.1");
}

double value_of(const FunctionalSample& s, Functional f) {
    switch (f) {
        case Functional::occupation: return s.a;
        case Functional::area: return s.b;
        case Functional::absarea: return s.c;
        case Functional::endpoint: return s.x_end;
    }
    return 0.0;
}

const char* name_of(Functional f) {
    switch (f) {
        case Functional::occupation: return "occupation";
        case Functional::area: return "area";
        case Functional::absarea: return "absarea";
        case Functional::endpoint: return "endpoint";
    }
    return "";
}

Functional functional_from_name(const std::string& name) {
    if (name == "occupation" || name == "a") return Functional::occupation;
    if (name == "area" || name == "b") return Functional::area;
    if (name == "absarea" || name == "c") return Functional::absarea;
    if (name == "endpoint" || name == "x_end") return Functional::endpoint;
    throw std::invalid_argument("unknown functional '" + name + "'");
}

void sample_reset_epochs(RngStream& stream, double r, double T, std::vector<double>& out) {
    out.clear();
    if (r <= 0.0) return;
    double t = stream.exponential(r);
    while (t < T) {
        out.push_back(t);
        t += stream.exponential(r);
    }
}

std::vector<double> sample_reset_epochs(RngStream& stream, double r, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("sample_reset_epochs: T must be > 0");
    std::vector<double> out;
    sample_reset_epochs(stream, r, T, out);
    return out;
}

namespace {

FunctionalSample simulate_with_buffer(const SimConfig& config, RngStream& stream,
                                      std::vector<double>& resets) {
    sample_reset_epochs(stream, config.r, config.T, resets);
    return integrate_path(config.T, config.step(), resets, [&stream] { return stream.normal(); });
}

void simulate_range(const SimConfig& config, std::size_t first, std::span<FunctionalSample> out) {
    std::vector<double> resets;
    for (std::size_t j = 0; j < out.size(); ++j) {
        RngStream stream(config.seed, first + j);
        out[j] = simulate_with_buffer(config, stream, resets);
    }
}

constexpr std::size_t block_paths = 1024;

}  // namespace

FunctionalSample simulate_path(const SimConfig& config, RngStream& stream) {
    config.validate();
    std::vector<double> resets;
    return simulate_with_buffer(config, stream, resets);
}

std::vector<FunctionalSample> run_ensemble(const SimConfig& config) {
    config.validate();
    if (config.n_paths > config.memory_cap_bytes / sizeof(FunctionalSample))
        throw resource_error("run_ensemble: sample list exceeds memory cap; stream with for_each_chunk");
    std::vector<FunctionalSample> out(config.n_paths);
    const std::size_t n_blocks = (config.n_paths + block_paths - 1) / block_paths;
    detail::parallel_for(n_blocks, config.threads, [&](std::size_t b) {
        const std::size_t first = b * block_paths;
        const std::size_t count = std::min(block_paths, config.n_paths - first);
        simulate_range(config, first, std::span(out).subspan(first, count));
    });
    return out;
}

void for_each_chunk(const SimConfig& config, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::span<const FunctionalSample>)>& consumer) {
    config.validate();
    if (chunk_size == 0) throw std::invalid_argument("for_each_chunk: chunk_size must be > 0");
    const std::size_t wave_chunks = std::max<std::size_t>(1, config.threads) * 4;
    std::vector<FunctionalSample> buffer;
    for (std::size_t wave_first = 0; wave_first < config.n_paths;) {
        const std::size_t wave_paths = std::min(chunk_size * wave_chunks, config.n_paths - wave_first);
        buffer.resize(wave_paths);
        const std::size_t n_chunks = (wave_paths + chunk_size - 1) / chunk_size;
        detail::parallel_for(n_chunks, config.threads, [&](std::size_t c) {
            const std::size_t off = c * chunk_size;
            const std::size_t count = std::min(chunk_size, wave_paths - off);
            simulate_range(config, wave_first + off, std::span(buffer).subspan(off, count));
        });
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t off = c * chunk_size;
            const std::size_t count = std::min(chunk_size, wave_paths - off);
            consumer(wave_first + off, std::span<const FunctionalSample>(buffer).subspan(off, count));
        }
        wave_first += wave_paths;
    }
}

}  // namespace rbmlab
