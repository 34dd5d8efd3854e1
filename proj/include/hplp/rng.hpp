#pragma once

#include <cstdint>

namespace hplp {

std::uint64_t splitmix64_mix(std::uint64_t z);

// Counter-based SplitMix64 stream. Draw i of stream (seed, stream) depends only on
// those three numbers, so any worker can regenerate any stream.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t position() const { return counter_; }

    std::uint64_t next_u64();
    // [0, 1) with 53 random bits.
    double uniform();
    // Standard normal via Box-Muller (one value per two uniforms).
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace hplp
