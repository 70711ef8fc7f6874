#include "silab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "silab/errors.hpp"

namespace silab {

RootedGraph::RootedGraph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges, Vertex root)
    : n_(n), root_(root), edges_(std::move(edges)) {
    if (n_ == 0) throw StructuralError("RootedGraph: empty vertex set");
    if (root_ >= n_) throw StructuralError("RootedGraph: root out of range");

    adj_.resize(n_);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        auto [u, v] = edges_[e];
        if (u >= n_ || v >= n_) throw StructuralError("RootedGraph: vertex id out of range");
        if (u == v) throw StructuralError("RootedGraph: self-loop");
        adj_[u].emplace_back(v, e);
        adj_[v].emplace_back(u, e);
    }

    // multi-edge check
    std::vector<std::pair<Vertex, Vertex>> norm(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto [u, v] = edges_[i];
        norm[i] = {std::min(u, v), std::max(u, v)};
    }
    std::sort(norm.begin(), norm.end());
    if (std::adjacent_find(norm.begin(), norm.end()) != norm.end())
        throw StructuralError("RootedGraph: multi-edge");

    // connectivity
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{root_};
    seen[root_] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (auto [w, e] : adj_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != n_) throw StructuralError("RootedGraph: not connected");
}

RootedGraph RootedGraph::rerooted(Vertex new_root) const {
    return RootedGraph(n_, edges_, new_root);
}

void write_edge_list(std::ostream& out, const RootedGraph& g) {
    out << g.n() << ' ' << g.m() << ' ' << g.root() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const RootedGraph& g) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    write_edge_list(out, g);
    if (!out) throw DataError("write failed: " + path);
}

RootedGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw DataError("edge list: missing header line");
    std::istringstream head(line);
    long long n = -1, m = -1, root = -1;
    if (!(head >> n >> m >> root) || n <= 0 || m < 0 || root < 0 || root >= n)
        throw DataError("edge list: malformed header at line " + std::to_string(lineno));

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line())
            throw DataError("edge list: expected " + std::to_string(m) + " edges, got " +
                            std::to_string(i));
        std::istringstream row(line);
        long long u = -1, v = -1;
        if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n)
            throw DataError("edge list: malformed edge at line " + std::to_string(lineno));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    try {
        return RootedGraph(static_cast<Vertex>(n), std::move(edges), static_cast<Vertex>(root));
    } catch (const StructuralError& e) {
        throw DataError(std::string("edge list: ") + e.what());
    }
}

RootedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open: " + path);
    return read_edge_list(in);
}

RootedGraph path_graph(Vertex n, Vertex root) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return RootedGraph(n, std::move(edges), root);
}

RootedGraph cycle_graph(Vertex n, Vertex root) {
    if (n < 3) throw StructuralError("cycle_graph: need n >= 3");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n - 1, 0);
    return RootedGraph(n, std::move(edges), root);
}

RootedGraph star_graph(Vertex n, Vertex root) {
    if (n < 2) throw StructuralError("star_graph: need n >= 2");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 1; i < n; ++i) edges.emplace_back(0, i);
    return RootedGraph(n, std::move(edges), root);
}

RootedGraph complete_graph(Vertex n, Vertex root) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return RootedGraph(n, std::move(edges), root);
}

} // namespace silab
