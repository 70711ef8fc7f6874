#include "silab/kappa.hpp"

#include <algorithm>
#include <limits>

#include "silab/errors.hpp"

namespace silab {

namespace {

struct DfsResult {
    std::vector<EdgeId> bridges;       // increasing edge id
    std::vector<Vertex> far_side;      // per bridge: subtree size on the non-root side
};

// Iterative lowpoint DFS from g.root(); finds bridges and, for each, the
// size of the subtree hanging below it (the side not containing the root).
DfsResult bridge_dfs(const RootedGraph& g) {
    const Vertex n = g.n();
    std::vector<std::uint32_t> disc(n, 0), low(n, 0), sub(n, 1);
    std::vector<EdgeId> parent_edge(n, kNoEdge);
    std::vector<std::uint32_t> iter(n, 0);
    std::vector<Vertex> stack;
    std::vector<std::pair<EdgeId, Vertex>> bridge_acc;

    std::uint32_t timer = 1;
    stack.reserve(n);
    stack.push_back(g.root());
    disc[g.root()] = low[g.root()] = timer++;

    while (!stack.empty()) {
        const Vertex v = stack.back();
        const auto& nbrs = g.adjacent(v);
        if (iter[v] < nbrs.size()) {
            const auto [w, e] = nbrs[iter[v]++];
            if (e == parent_edge[v]) continue;
            if (disc[w] != 0) {
                low[v] = std::min(low[v], disc[w]);
            } else {
                disc[w] = low[w] = timer++;
                parent_edge[w] = e;
                stack.push_back(w);
            }
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                const Vertex p = stack.back();
                low[p] = std::min(low[p], low[v]);
                sub[p] += sub[v];
                if (low[v] > disc[p]) bridge_acc.emplace_back(parent_edge[v], sub[v]);
            }
        }
    }

    std::sort(bridge_acc.begin(), bridge_acc.end());
    DfsResult res;
    res.bridges.reserve(bridge_acc.size());
    res.far_side.reserve(bridge_acc.size());
    for (auto [e, s] : bridge_acc) {
        res.bridges.push_back(e);
        res.far_side.push_back(s);
    }
    return res;
}

} // namespace

KappaProfile kappa(const RootedGraph& g, bool per_vertex) {
    const DfsResult dfs = bridge_dfs(g);
    KappaProfile prof;
    prof.kappa_at_root = g.n();
    for (std::size_t i = 0; i < dfs.bridges.size(); ++i) {
        const Vertex far = dfs.far_side[i];
        const Vertex root_side = g.n() - far;
        prof.bridges.push_back(BridgeInfo{dfs.bridges[i], root_side, far});
        prof.kappa_at_root = std::min(prof.kappa_at_root, root_side);
    }
    if (per_vertex) prof.kappa_per_vertex = kappa_all_roots(g);
    return prof;
}

Vertex kappa_tree(const RootedGraph& g) {
    if (!g.is_tree()) throw StructuralError("kappa_tree: graph is not a tree");
    const Vertex n = g.n();
    // subtree sizes via one DFS from the root
    std::vector<Vertex> order;
    order.reserve(n);
    std::vector<Vertex> parent(n, kNoVertex);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{g.root()};
    seen[g.root()] = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (auto [w, e] : g.adjacent(v))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = v;
                stack.push_back(w);
            }
    }
    std::vector<Vertex> sub(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] != kNoVertex) sub[parent[*it]] += sub[*it];

    Vertex max_hanging = 0;
    for (auto [w, e] : g.adjacent(g.root())) max_hanging = std::max(max_hanging, sub[w]);
    return n - max_hanging;
}

Vertex kappa_cycle_decomposition(const RootedGraph& g) {
    if (!g.is_unicyclic()) throw StructuralError("kappa_cycle_decomposition: graph is not unicyclic");
    const Vertex n = g.n();

    // Peel degree-1 vertices; what survives is the unique cycle.
    std::vector<std::uint32_t> deg(n);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = static_cast<std::uint32_t>(g.degree(v));
        if (deg[v] == 1) queue.push_back(v);
    }
    std::vector<char> on_cycle(n, 1);
    while (!queue.empty()) {
        const Vertex v = queue.back();
        queue.pop_back();
        on_cycle[v] = 0;
        for (auto [w, e] : g.adjacent(v)) {
            if (on_cycle[w] && --deg[w] == 1) queue.push_back(w);
        }
    }
    if (!on_cycle[g.root()])
        throw StructuralError("kappa_cycle_decomposition: root is not on the cycle");

    // Hanging trees are the components of G minus the cycle vertices.
    std::vector<char> seen(n, 0);
    Vertex max_hanging = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (on_cycle[v] || seen[v]) continue;
        Vertex size = 0;
        std::vector<Vertex> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            ++size;
            for (auto [w, e] : g.adjacent(x))
                if (!on_cycle[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        max_hanging = std::max(max_hanging, size);
    }
    return n - max_hanging;
}

Vertex kappa_d(const RootedGraph& g, unsigned d, std::uint64_t subset_cap) {
    if (d < 2) throw ParameterError("kappa_d: d must be >= 2");
    const unsigned r = d - 1;
    const EdgeId m = g.m();
    if (r > m) throw ParameterError("kappa_d: d-1 exceeds edge count");

    // C(m, r) against the cap, with overflow guard.
    double combinations = 1.0;
    for (unsigned i = 0; i < r; ++i) combinations *= static_cast<double>(m - i) / (i + 1);
    if (combinations > static_cast<double>(subset_cap))
        throw ResourceError("kappa_d: subset budget exceeded");

    std::vector<EdgeId> pick(r);
    for (unsigned i = 0; i < r; ++i) pick[i] = i;

    std::vector<char> removed(m, 0);
    std::vector<char> seen(g.n());
    std::vector<Vertex> stack;
    Vertex best = g.n();

    while (true) {
        for (EdgeId e : pick) removed[e] = 1;
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, g.root());
        seen[g.root()] = 1;
        Vertex size = 0;
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            ++size;
            for (auto [w, e] : g.adjacent(v))
                if (!removed[e] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        best = std::min(best, size);
        for (EdgeId e : pick) removed[e] = 0;

        // next r-combination in lexicographic order
        int i = static_cast<int>(r) - 1;
        while (i >= 0 && pick[i] == m - r + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (unsigned j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

Vertex kappa_oracle(const RootedGraph& g) {
    const Vertex n = g.n();
    if (n > 14) throw ResourceError("kappa_oracle: n exceeds enumeration cap (14)");
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    Vertex best = n;

    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (!(mask & (1u << g.root()))) continue;
        const Vertex size = static_cast<Vertex>(__builtin_popcount(mask));
        if (size >= best || size == n) continue;

        // boundary edge count
        unsigned boundary = 0;
        for (auto [u, v] : g.edges())
            boundary += ((mask >> u) ^ (mask >> v)) & 1u;
        if (boundary != 1) continue;

        // connectivity of the subset via bit BFS
        std::uint32_t comp = 1u << g.root();
        std::uint32_t frontier = comp;
        while (frontier) {
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f) {
                const int v = __builtin_ctz(f);
                f &= f - 1;
                for (auto [w, e] : g.adjacent(static_cast<Vertex>(v))) {
                    const std::uint32_t bit = 1u << w;
                    if ((mask & bit) && !(comp & bit)) next |= bit;
                }
            }
            comp |= next;
            frontier = next;
        }
        if (static_cast<Vertex>(__builtin_popcount(comp)) == size) best = size;
    }
    return best;
}

std::vector<Vertex> kappa_all_roots(const RootedGraph& g) {
    const Vertex n = g.n();
    const DfsResult dfs = bridge_dfs(g);
    if (dfs.bridges.empty()) return std::vector<Vertex>(n, n);

    // Label 2-edge-connected blocks: components after deleting bridges.
    std::vector<char> is_bridge(g.m(), 0);
    for (EdgeId e : dfs.bridges) is_bridge[e] = 1;
    std::vector<std::uint32_t> block(n, std::uint32_t(-1));
    std::uint32_t nblocks = 0;
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < n; ++v) {
        if (block[v] != std::uint32_t(-1)) continue;
        const std::uint32_t b = nblocks++;
        block[v] = b;
        stack.assign(1, v);
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            for (auto [w, e] : g.adjacent(x))
                if (!is_bridge[e] && block[w] == std::uint32_t(-1)) {
                    block[w] = b;
                    stack.push_back(w);
                }
        }
    }

    std::vector<Vertex> weight(nblocks, 0);
    for (Vertex v = 0; v < n; ++v) ++weight[block[v]];

    // Block tree: nodes are blocks, edges are bridges.
    struct TreeEdge {
        std::uint32_t to;
        std::uint32_t id; // bridge index
    };
    std::vector<std::vector<TreeEdge>> tadj(nblocks);
    const std::uint32_t nbridges = static_cast<std::uint32_t>(dfs.bridges.size());
    for (std::uint32_t i = 0; i < nbridges; ++i) {
        auto [u, v] = g.edge(dfs.bridges[i]);
        tadj[block[u]].push_back({block[v], i});
        tadj[block[v]].push_back({block[u], i});
    }

    // Root the block tree at the root's block; a_e = weight of the child side.
    const std::uint32_t broot = block[g.root()];
    std::vector<std::uint32_t> order, parent(nblocks, std::uint32_t(-1)),
        parent_bridge(nblocks, std::uint32_t(-1));
    order.reserve(nblocks);
    {
        std::vector<std::uint32_t> st{broot};
        std::vector<char> seen(nblocks, 0);
        seen[broot] = 1;
        while (!st.empty()) {
            const std::uint32_t b = st.back();
            st.pop_back();
            order.push_back(b);
            for (auto [c, id] : tadj[b])
                if (!seen[c]) {
                    seen[c] = 1;
                    parent[c] = b;
                    parent_bridge[c] = id;
                    st.push_back(c);
                }
        }
    }

    std::vector<Vertex> subw(nblocks, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) subw[*it] = weight[*it];
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] != std::uint32_t(-1)) subw[parent[*it]] += subw[*it];

    // inmax[B]: largest child-side weight over bridges inside subtree(B).
    std::vector<Vertex> inmax(nblocks, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::uint32_t b = *it;
        for (auto [c, id] : tadj[b]) {
            if (parent[c] != b) continue;
            inmax[b] = std::max(inmax[b], std::max(subw[c], inmax[c]));
        }
    }

    // out[B]: largest far-side weight over bridges outside subtree(B), as seen
    // from B. Top-down with a top-2 trick over the children's g-values.
    std::vector<Vertex> out(nblocks, 0);
    for (std::uint32_t b : order) {
        Vertex top1 = 0, top2 = 0;
        std::uint32_t top1_child = std::uint32_t(-1);
        for (auto [c, id] : tadj[b]) {
            if (parent[c] != b) continue;
            const Vertex gc = std::max(subw[c], inmax[c]);
            if (gc > top1) {
                top2 = top1;
                top1 = gc;
                top1_child = c;
            } else {
                top2 = std::max(top2, gc);
            }
        }
        for (auto [c, id] : tadj[b]) {
            if (parent[c] != b) continue;
            const Vertex sib = (c == top1_child) ? top2 : top1;
            out[c] = std::max({out[b], static_cast<Vertex>(n - subw[c]), sib});
        }
    }

    std::vector<Vertex> result(n);
    for (Vertex v = 0; v < n; ++v) {
        const std::uint32_t b = block[v];
        result[v] = n - std::max(inmax[b], out[b]);
    }
    return result;
}

std::pair<Vertex, Vertex> max_kappa_over_roots(const RootedGraph& g) {
    const std::vector<Vertex> per = kappa_all_roots(g);
    Vertex best_v = 0;
    for (Vertex v = 1; v < g.n(); ++v)
        if (per[v] > per[best_v]) best_v = v;
    return {best_v, per[best_v]};
}

} // namespace silab
