#include "silab/er.hpp"

#include <algorithm>
#include <cmath>

#include "silab/errors.hpp"

namespace silab {

namespace {

struct UnionFind {
    std::vector<Vertex> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(Vertex n) : parent(n), size(n, 1) {
        for (Vertex v = 0; v < n; ++v) parent[v] = v;
    }
    Vertex find(Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

// Pair index -> (i,j), i < j, lexicographic by i then j.
// Rows before i hold P(i) = i(2n-i-1)/2 pairs.
std::pair<Vertex, Vertex> decode_pair(std::uint64_t idx, std::uint64_t n) {
    const double nd = static_cast<double>(n);
    double guess = nd - 0.5 - std::sqrt((nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(idx));
    std::uint64_t i = guess <= 0.0 ? 0 : static_cast<std::uint64_t>(guess);
    if (i >= n - 1) i = n - 2;
    auto row_start = [n](std::uint64_t r) { return r * (2 * n - r - 1) / 2; };
    while (i > 0 && row_start(i) > idx) --i;
    while (row_start(i + 1) <= idx) ++i;
    const std::uint64_t j = i + 1 + (idx - row_start(i));
    return {static_cast<Vertex>(i), static_cast<Vertex>(j)};
}

} // namespace

double er_edge_probability(std::uint32_t n, double lambda) {
    const double nd = n;
    const double p = 1.0 / nd + lambda * std::pow(nd, -4.0 / 3.0);
    return std::clamp(p, 0.0, 1.0);
}

ErSample sample_er(std::uint32_t n, double lambda, RngStream& rng) {
    if (n < 10) throw ParameterError("sample_er: n must be >= 10");
    const double p = er_edge_probability(n, lambda);
    const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

    std::vector<std::pair<Vertex, Vertex>> all_edges;
    if (p >= 1.0) {
        all_edges.reserve(total_pairs);
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    } else if (p > 0.0) {
        const double log_q = std::log1p(-p);
        std::uint64_t idx = 0;
        for (;;) {
            // geometric skip: failures before the next present edge
            const double u = rng.u01();
            const double skip = std::floor(std::log(u) / log_q);
            if (skip >= static_cast<double>(total_pairs - idx)) break;
            idx += static_cast<std::uint64_t>(skip);
            if (idx >= total_pairs) break;
            all_edges.push_back(decode_pair(idx, n));
            ++idx;
            if (idx >= total_pairs) break;
        }
    }

    UnionFind uf(n);
    for (auto [u, v] : all_edges) uf.unite(u, v);

    // cluster sizes, largest root (ties -> smallest contained vertex id)
    ErSample out{n, lambda, p, {}, RootedGraph(1, {}, 0), {}, 0};
    Vertex best_root = 0;
    std::uint32_t best_size = 0;
    std::vector<std::uint32_t> size_of_root(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        const Vertex r = uf.find(v);
        if (r == v) {
            size_of_root[v] = uf.size[v];
            out.cluster_sizes.push_back(uf.size[v]);
        }
    }
    std::sort(out.cluster_sizes.rbegin(), out.cluster_sizes.rend());
    // scan in vertex order: first vertex whose component has the max size
    const std::uint32_t max_size = out.cluster_sizes.front();
    for (Vertex v = 0; v < n; ++v) {
        if (size_of_root[uf.find(v)] == max_size) {
            best_root = uf.find(v);
            best_size = max_size;
            break;
        }
    }

    // relabel the largest cluster by increasing original id
    std::vector<Vertex> members;
    members.reserve(best_size);
    for (Vertex v = 0; v < n; ++v)
        if (uf.find(v) == best_root) members.push_back(v);
    std::vector<Vertex> local(n, kNoVertex);
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);

    std::vector<std::pair<Vertex, Vertex>> cluster_edges;
    for (auto [u, v] : all_edges)
        if (local[u] != kNoVertex && local[v] != kNoVertex)
            cluster_edges.emplace_back(local[u], local[v]);

    out.surplus = static_cast<std::uint32_t>(cluster_edges.size() - (members.size() - 1));
    out.largest = RootedGraph(static_cast<Vertex>(members.size()), std::move(cluster_edges), 0);
    out.original_ids = std::move(members);
    out.total_edges = all_edges.size();
    return out;
}

std::vector<std::pair<Vertex, Vertex>> er_edges_from_labels(std::uint32_t n, double lambda,
                                                            std::uint64_t label_seed) {
    if (n < 2 || n > 2000) throw ParameterError("er_edges_from_labels: need 2 <= n <= 2000");
    const double p = er_edge_probability(n, lambda);
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::uint64_t idx = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++idx)
            if (hashed_u01(label_seed, idx) <= p) edges.emplace_back(i, j);
    return edges;
}

} // namespace silab
