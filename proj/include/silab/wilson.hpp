#pragma once

#include <cstdint>
#include <vector>

#include "silab/graph.hpp"
#include "silab/rng.hpp"

namespace silab {

enum class UstColor : std::uint8_t { Red, Blue };

/// Output of the colored Wilson construction of UST(n) plus the extra edge
/// (x0, x1), with x0 = 0 the root. increment_sizes holds |Delta_-1|,
/// |Delta_0|, |Delta_1|, ... in order; (r0, b0) are the initial urn counts
/// |R_0|, |B_0| right after the first colored step.
struct ColoredUstResult {
    RootedGraph graph; // spanning tree edges plus edge (0,1); n edges total
    std::vector<UstColor> color;
    std::uint64_t red_count = 0;
    std::uint64_t blue_count = 0;
    std::uint32_t r0 = 0;
    std::uint32_t b0 = 0;
    std::vector<std::uint32_t> increment_sizes;
    std::uint32_t first_path_length = 0; // edges on the tree path from x1 to x0
};

/// Colored Wilson's algorithm on the complete graph K_n:
///   1. add the edge (x0, x1);
///   2. LERW from x1 to x0 -> C_-1;
///   3. LERW from the next uncovered vertex to C_-1; the walk plus its hit
///      point is R_0, the rest of C_-1 is B_0;
///   4. further LERWs are colored by the color of their hit point;
///   5. stop when every vertex is covered.
/// Loop erasure is chronological. The first walk is resampled until it has
/// at least two edges so that the extra edge never duplicates a tree edge
/// (probability 2/n per attempt); the standalone first-path sampler below
/// keeps the unconditioned law.
ColoredUstResult sample_ust_colored(std::uint32_t n, RngStream& rng);

/// Length (edge count) of a plain LERW from x1 to x0 on K_n; the exact law
/// is P[L=k] = ((k+1)/n) prod_{j=1}^{k-1} (1 - (j+1)/n).
std::uint32_t sample_first_path_length(std::uint32_t n, RngStream& rng);

/// Exact conditional branch-size law of colored Wilson:
/// P[|Delta_{i+1}| = k | |C_i| = c] = ((k+c)/n) prod_{j=1}^{k-1} (1-(j+c)/n).
double delta_law(std::uint32_t n, std::uint32_t c, std::uint32_t k);

/// Exact law of the first-path length (same product formula with c = 1).
double first_path_law(std::uint32_t n, std::uint32_t k);

/// Size-only partial runs of colored Wilson: runs the cover-size process
/// until it reaches or passes c_target; when it lands exactly on c_target,
/// records the size of the next branch. Used to test delta_law empirically.
std::vector<std::uint32_t> observe_delta_at(std::uint32_t n, std::uint32_t c_target,
                                            std::uint32_t runs, std::uint64_t master_seed);

} // namespace silab
