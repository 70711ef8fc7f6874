#pragma once

#include <cstdint>
#include <vector>

#include "silab/graph.hpp"
#include "silab/rng.hpp"

namespace silab {

/// Largest cluster of a near-critical Erdos-Renyi graph G(n, p) with
/// p = 1/n + lambda n^{-4/3}, clamped to [0,1].
struct ErSample {
    std::uint32_t n = 0;
    double lambda = 0.0;
    double p = 0.0;
    std::vector<std::uint32_t> cluster_sizes; // sorted descending
    RootedGraph largest;                      // relabeled; local 0 = smallest original id, root 0
    std::vector<Vertex> original_ids;         // per local vertex
    std::uint32_t surplus = 0;                // edges beyond a spanning tree
    std::uint64_t total_edges = 0;            // whole graph, all clusters
};

/// O(expected m) sampling by geometric edge-skipping over the (n choose 2)
/// pair sequence, then union-find cluster extraction. Ties for the largest
/// cluster break toward the one containing the smallest vertex id.
ErSample sample_er(std::uint32_t n, double lambda, RngStream& rng);

double er_edge_probability(std::uint32_t n, double lambda);

/// Label-coupled generator: edge (i,j) is present iff its fixed Unif(0,1)
/// label (a stateless hash of label_seed and the pair index) is <= p(lambda).
/// Raising lambda only adds edges, which makes the monotone coupling exact.
/// Materializes all pairs; intended for n <= 2000.
std::vector<std::pair<Vertex, Vertex>> er_edges_from_labels(std::uint32_t n, double lambda,
                                                            std::uint64_t label_seed);

} // namespace silab
