#include "silab/urn.hpp"

#include <algorithm>
#include <cmath>

#include "silab/errors.hpp"

namespace silab {

UrnState urn_init(std::uint64_t red, std::uint64_t blue) {
    if (red < 1 || blue < 1) throw ParameterError("urn_init: both colors must start >= 1");
    return UrnState{red, blue, {}};
}

UrnState urn_step(UrnState state, std::uint64_t increment, RngStream& rng) {
    if (increment < 1) throw ParameterError("urn_step: increment must be >= 1");
    if (state.red < 1 || state.blue < 1) throw ParameterError("urn_step: invalid state");
    const bool to_red = rng.uniform_below(state.total()) < state.red;
    if (to_red)
        state.red += increment;
    else
        state.blue += increment;
    state.history.emplace_back(increment, to_red);
    return state;
}

double urn_run(std::uint64_t red0, std::uint64_t blue0, std::span<const std::uint32_t> increments,
               RngStream& rng) {
    if (increments.empty()) throw ParameterError("urn_run: increments must be nonempty");
    UrnState st = urn_init(red0, blue0);
    for (std::uint32_t inc : increments) st = urn_step(std::move(st), inc, rng);
    return st.red_ratio();
}

double IncrementBoundedness::percentile(double q) const {
    if (max_ratio.empty()) throw ParameterError("percentile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("percentile: q in [0,1]");
    const double pos = q * static_cast<double>(max_ratio.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, max_ratio.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return max_ratio[lo] * (1.0 - frac) + max_ratio[hi] * frac;
}

IncrementBoundedness increment_boundedness_check(std::span<const ColoredUstResult> runs,
                                                 std::uint32_t n) {
    IncrementBoundedness out;
    out.max_ratio.reserve(runs.size());
    const double scale = std::sqrt(static_cast<double>(n));
    for (const auto& run : runs) {
        if (run.graph.n() != n) throw ParameterError("increment_boundedness_check: n mismatch");
        std::uint32_t mx = 0;
        for (std::uint32_t d : run.increment_sizes) mx = std::max(mx, d);
        out.max_ratio.push_back(static_cast<double>(mx) / scale);
    }
    std::sort(out.max_ratio.begin(), out.max_ratio.end());
    return out;
}

} // namespace silab
