#pragma once

#include <array>
#include <cstdint>

namespace rbmlab {

// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// SplitMix64 finalizer, used to derive independent seeds from labels.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label);

// Counter-based stream. The state is a pure function of (seed, stream_id)
// and the number of draws, so stream i can be reconstructed anywhere.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // Uniform on (0, 1), 53-bit resolution.
    double uniform();
    double normal();
    double exponential(double rate);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rbmlab
