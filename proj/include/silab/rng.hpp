#pragma once

#include <cstdint>
#include <random>

namespace silab {

/// Seedable random stream addressed by (master_seed, stream_index).
///
/// Streams with the same address reproduce bit-identical output on every
/// platform and under any thread schedule: the engine is std::mt19937_64
/// (fully specified by the standard) and all variate transformations are
/// implemented here rather than via std::*_distribution, whose algorithms
/// are implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double strictly inside (0,1).
    double u01() {
        // 53 random bits, offset by half a lattice step: range [2^-54, 1-2^-54].
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unbiased uniform integer in [0, n), n >= 1. Rejection sampling.
    std::uint64_t uniform_below(std::uint64_t n);

    /// Bernoulli(p).
    bool bernoulli(double p) { return u01() < p; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used for seed mixing and as a stateless per-index
/// hash (e.g. the label-coupled Erdos-Renyi path).
std::uint64_t splitmix64(std::uint64_t x);

/// Stateless uniform (0,1) label for a (seed, index) pair.
double hashed_u01(std::uint64_t seed, std::uint64_t index);

} // namespace silab
