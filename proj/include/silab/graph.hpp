#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace silab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

/// Immutable simple connected graph with a distinguished root.
///
/// Vertices are dense ids [0, n). The edge list order is stable and serves
/// as the generic tie-breaking order on edges: every deterministic choice
/// between simultaneously eligible edges picks the smaller edge id.
class RootedGraph {
public:
    /// Validates: no self-loops, no multi-edges, connected, root in range.
    RootedGraph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges, Vertex root);

    Vertex n() const { return n_; }
    EdgeId m() const { return static_cast<EdgeId>(edges_.size()); }
    Vertex root() const { return root_; }

    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    std::pair<Vertex, Vertex> edge(EdgeId e) const { return edges_[e]; }

    /// Incident (neighbor, edge id) pairs, in edge-insertion order.
    const std::vector<std::pair<Vertex, EdgeId>>& adjacent(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }

    Vertex other_end(EdgeId e, Vertex v) const {
        const auto& [a, b] = edges_[e];
        return a == v ? b : a;
    }

    /// Same graph, different root.
    RootedGraph rerooted(Vertex new_root) const;

    bool is_tree() const { return m() + 1 == n_; }
    bool is_unicyclic() const { return m() == n_; }

private:
    Vertex n_;
    Vertex root_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj_;
};

// --- edge-list file format -------------------------------------------------
// Header line "n m root", then m lines "u v" (0-based). Writer and reader
// are exact inverses.

void write_edge_list(std::ostream& out, const RootedGraph& g);
void write_edge_list_file(const std::string& path, const RootedGraph& g);
RootedGraph read_edge_list(std::istream& in);
RootedGraph read_edge_list_file(const std::string& path);

// --- fixture factories -----------------------------------------------------

RootedGraph path_graph(Vertex n, Vertex root = 0);
RootedGraph cycle_graph(Vertex n, Vertex root = 0);
RootedGraph star_graph(Vertex n, Vertex root = 0); // vertex 0 is the center
RootedGraph complete_graph(Vertex n, Vertex root = 0);

} // namespace silab
