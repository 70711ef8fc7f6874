#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "silab/rng.hpp"
#include "silab/wilson.hpp"

namespace silab {

/// Time-inhomogeneous Polya urn with prescribed increments.
struct UrnState {
    std::uint64_t red = 0;
    std::uint64_t blue = 0;
    std::vector<std::pair<std::uint64_t, bool>> history; // (increment, went to red)

    std::uint64_t total() const { return red + blue; }
    double red_ratio() const { return static_cast<double>(red) / static_cast<double>(total()); }
};

/// Initial state; both counts must be >= 1 for the proportional rule.
UrnState urn_init(std::uint64_t red, std::uint64_t blue);

/// One reinforcement step: the increment joins red with probability
/// red/(red+blue) (decided by an exact integer draw), else blue.
UrnState urn_step(UrnState state, std::uint64_t increment, RngStream& rng);

/// Applies urn_step over the whole increment sequence; returns R/C.
double urn_run(std::uint64_t red0, std::uint64_t blue0, std::span<const std::uint32_t> increments,
               RngStream& rng);

/// Empirical distribution of max_i |Delta_i| / sqrt(n) over colored Wilson
/// runs (the square-root boundedness statistic).
struct IncrementBoundedness {
    std::vector<double> max_ratio; // per run, sorted ascending
    double percentile(double q) const;
};
IncrementBoundedness increment_boundedness_check(std::span<const ColoredUstResult> runs,
                                                 std::uint32_t n);

} // namespace silab
