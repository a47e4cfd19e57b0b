#include "rbmlab/random.hpp"

#include <cmath>

namespace rbmlab {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    constexpr std::uint64_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    std::uint32_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = m0 * c0;
        const std::uint64_t p1 = m1 * c2;
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        c0 = hi1 ^ c1 ^ k0;
        c2 = hi0 ^ c3 ^ k1;
        c1 = static_cast<std::uint32_t>(p1);
        c3 = static_cast<std::uint32_t>(p0);
        k0 += w0;
        k1 += w1;
    }
    return {c0, c1, c2, c3};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (label + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    buf_ = philox4x32(ctr, key);
    ++block_;
    pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double RngStream::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

// Marsaglia polar method on 32-bit uniforms: one Philox block per attempt.
double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    for (;;) {
        const double v1 = (static_cast<double>(next_u32()) + 0.5) * 0x1.0p-31 - 1.0;
        const double v2 = (static_cast<double>(next_u32()) + 0.5) * 0x1.0p-31 - 1.0;
        const double s = v1 * v1 + v2 * v2;
        if (s >= 1.0) continue;
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_normal_ = v2 * f;
        has_spare_ = true;
        return v1 * f;
    }
}

double RngStream::exponential(double rate) { return -std::log(uniform()) / rate; }

}  // namespace rbmlab
