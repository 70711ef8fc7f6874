#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "silab/graph.hpp"

namespace silab {

struct BridgeInfo {
    EdgeId edge;
    Vertex root_side; // size of the root's component in G \ edge
    Vertex far_side;  // n - root_side
};

struct KappaProfile {
    Vertex kappa_at_root = 0;
    std::vector<BridgeInfo> bridges; // in increasing edge-id order
    std::optional<std::vector<Vertex>> kappa_per_vertex;
};

/// Bottleneck index kappa(G,s) = min over edges e of |C(s, G\e)|.
/// Non-bridge removals leave the graph connected, so the minimum runs over
/// bridges of the root-side size and equals n for 2-edge-connected graphs.
/// Single DFS pass (lowpoint method) plus subtree-size accumulation, O(n+m).
KappaProfile kappa(const RootedGraph& g, bool per_vertex = false);

/// kappa for trees via the closed form |T| - max hanging subtree size.
Vertex kappa_tree(const RootedGraph& g);

/// kappa for a unicyclic graph whose root lies on the unique cycle:
/// |G| - max size of a tree hanging off the cycle.
Vertex kappa_cycle_decomposition(const RootedGraph& g);

/// d-th order bottleneck index: minimum over (d-1)-subsets of edges of the
/// root component size. Plain subset enumeration; subset_cap bounds the
/// number of subsets visited (resource error beyond).
Vertex kappa_d(const RootedGraph& g, unsigned d, std::uint64_t subset_cap = 10'000'000);

/// Independent oracle from the front-based definition: minimum size of a
/// connected vertex set containing the root whose edge boundary is a single
/// edge, or n if none exists. Exponential enumeration, n <= 14.
Vertex kappa_oracle(const RootedGraph& g);

/// kappa(G,v) for every v (per 2-edge-connected block), O(n+m) total.
std::vector<Vertex> kappa_all_roots(const RootedGraph& g);

/// Argmax vertex of kappa(G,v), ties broken by smallest vertex id.
std::pair<Vertex, Vertex> max_kappa_over_roots(const RootedGraph& g);

} // namespace silab
