#include "silab/gw.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "silab/errors.hpp"

namespace silab {

OffspringLaw OffspringLaw::binomial_critical(unsigned k) {
    if (k < 2) throw ParameterError("BinomialCritical: k must be >= 2");
    return {Kind::BinomialCritical, k};
}

double OffspringLaw::sigma2() const {
    switch (kind) {
        case Kind::Poisson1: return 1.0;
        case Kind::GeometricHalf: return 2.0;
        case Kind::BinomialCritical: return 1.0 - 1.0 / binom_k;
    }
    return 0.0;
}

double OffspringLaw::pmf(unsigned k) const {
    switch (kind) {
        case Kind::Poisson1: {
            double p = std::exp(-1.0);
            for (unsigned i = 1; i <= k; ++i) p /= i;
            return p;
        }
        case Kind::GeometricHalf:
            return std::ldexp(1.0, -static_cast<int>(k) - 1); // 2^-(k+1)
        case Kind::BinomialCritical: {
            if (k > binom_k) return 0.0;
            const double p = 1.0 / binom_k;
            double res = std::pow(p, k) * std::pow(1.0 - p, binom_k - k);
            for (unsigned i = 0; i < k; ++i) res *= static_cast<double>(binom_k - i) / (k - i);
            return res;
        }
    }
    return 0.0;
}

namespace {

unsigned sample_poisson1(RngStream& rng) {
    // Knuth: product of uniforms against e^-1.
    static const double L = std::exp(-1.0);
    unsigned k = 0;
    double p = rng.u01();
    while (p > L) {
        ++k;
        p *= rng.u01();
    }
    return k;
}

unsigned sample_geometric_half(RngStream& rng) {
    // P[k] = 2^-(k+1): trailing zero bits of a uniform word.
    for (;;) {
        const std::uint64_t x = rng.next_u64();
        if (x != 0) return static_cast<unsigned>(__builtin_ctzll(x));
        // all-zero word: 64 failures, keep counting (probability 2^-64)
    }
}

unsigned sample_binomial(unsigned trials, double p, RngStream& rng) {
    unsigned c = 0;
    for (unsigned i = 0; i < trials; ++i) c += rng.u01() < p ? 1u : 0u;
    return c;
}

} // namespace

unsigned OffspringLaw::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::Poisson1: return sample_poisson1(rng);
        case Kind::GeometricHalf: return sample_geometric_half(rng);
        case Kind::BinomialCritical: return sample_binomial(binom_k, 1.0 / binom_k, rng);
    }
    return 0;
}

unsigned OffspringLaw::sample_size_biased(RngStream& rng) const {
    switch (kind) {
        case Kind::Poisson1:
            return 1 + sample_poisson1(rng);
        case Kind::GeometricHalf:
            // k 2^-(k+1) is 1 + NegBinomial(2, 1/2): one plus two geometrics.
            return 1 + sample_geometric_half(rng) + sample_geometric_half(rng);
        case Kind::BinomialCritical:
            return 1 + sample_binomial(binom_k - 1, 1.0 / binom_k, rng);
    }
    return 1;
}

std::string OffspringLaw::name() const {
    switch (kind) {
        case Kind::Poisson1: return "poisson1";
        case Kind::GeometricHalf: return "geometric-half";
        case Kind::BinomialCritical: return "binomial" + std::to_string(binom_k);
    }
    return "?";
}

RootedGraph LabeledTree::to_rooted_graph() const {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(size() > 0 ? size() - 1 : 0);
    for (Vertex v = 1; v < size(); ++v) edges.emplace_back(parent[v], v);
    return RootedGraph(static_cast<Vertex>(size()), std::move(edges), 0);
}

LabeledTree sample_gw(const OffspringLaw& law, RngStream& rng, std::uint64_t size_cap,
                      std::uint32_t depth_cap) {
    if (size_cap < 1) throw ParameterError("sample_gw: size_cap must be >= 1");
    LabeledTree t;
    t.parent.push_back(kNoVertex);
    t.depth.push_back(0);
    t.gen_sizes.assign(1, 1);

    std::size_t head = 0; // breadth-first frontier cursor
    while (head < t.parent.size()) {
        const Vertex v = static_cast<Vertex>(head++);
        const std::uint32_t d = t.depth[v];
        if (depth_cap != 0 && d >= depth_cap) continue;
        const unsigned c = law.sample(rng);
        if (c == 0) continue;
        if (t.parent.size() + c > size_cap) {
            t.truncated = true;
            break;
        }
        if (t.gen_sizes.size() <= d + 1) t.gen_sizes.push_back(0);
        t.gen_sizes[d + 1] += c;
        for (unsigned i = 0; i < c; ++i) {
            t.parent.push_back(v);
            t.depth.push_back(d + 1);
        }
    }
    t.height = static_cast<std::uint32_t>(t.gen_sizes.size() - 1);
    return t;
}

ConditionedSample sample_gw_conditioned(const OffspringLaw& law, std::uint32_t N, RngStream& rng,
                                        std::uint64_t size_cap, std::uint64_t retry_budget) {
    if (N < 1) throw ParameterError("sample_gw_conditioned: N must be >= 1");
    if (retry_budget == 0) retry_budget = 10'000ULL * N;
    ConditionedSample out;
    for (out.attempts = 1; out.attempts <= retry_budget; ++out.attempts) {
        LabeledTree t = sample_gw(law, rng, size_cap);
        if (t.truncated) {
            ++out.capped_attempts;
            continue;
        }
        if (t.height >= N) {
            out.tree = std::move(t);
            return out;
        }
    }
    throw ResourceError("sample_gw_conditioned: retry budget exhausted");
}

KestenSample sample_kesten(const OffspringLaw& law, std::uint32_t depth, RngStream& rng) {
    if (depth < 1) throw ParameterError("sample_kesten: depth must be >= 1");
    KestenSample out;
    LabeledTree& t = out.tree;
    t.parent.push_back(kNoVertex);
    t.depth.push_back(0);
    t.gen_sizes.assign(1, 1);
    std::vector<char> special{1};
    out.spine.push_back(0);

    std::size_t head = 0;
    while (head < t.parent.size()) {
        const Vertex v = static_cast<Vertex>(head++);
        const std::uint32_t d = t.depth[v];
        if (d >= depth) continue; // global truncation
        unsigned c;
        std::uint64_t special_child = UINT64_MAX;
        if (special[v]) {
            c = law.sample_size_biased(rng);
            special_child = rng.uniform_below(c);
        } else {
            c = law.sample(rng);
        }
        if (c == 0) continue;
        if (t.gen_sizes.size() <= d + 1) t.gen_sizes.push_back(0);
        t.gen_sizes[d + 1] += c;
        for (unsigned i = 0; i < c; ++i) {
            const Vertex child = static_cast<Vertex>(t.parent.size());
            t.parent.push_back(v);
            t.depth.push_back(d + 1);
            special.push_back(i == special_child ? 1 : 0);
            if (i == special_child) out.spine.push_back(child);
        }
    }
    t.height = static_cast<std::uint32_t>(t.gen_sizes.size() - 1);
    return out;
}

RootedGraph add_root_edge_to(const LabeledTree& tree, Vertex target) {
    const Vertex n = static_cast<Vertex>(tree.size());
    if (n < 3) throw StructuralError("add_root_edge: tree must have >= 3 vertices");
    if (target == 0 || target >= n) throw StructuralError("add_root_edge: bad target");
    if (tree.parent[target] == 0) throw StructuralError("add_root_edge: target adjacent to root");
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(n);
    for (Vertex v = 1; v < n; ++v) edges.emplace_back(tree.parent[v], v);
    edges.emplace_back(0, target);
    return RootedGraph(n, std::move(edges), 0);
}

RootedGraph add_root_edge(const LabeledTree& tree, RngStream& rng) {
    const Vertex n = static_cast<Vertex>(tree.size());
    if (n < 3) throw StructuralError("add_root_edge: tree must have >= 3 vertices");
    std::vector<Vertex> eligible;
    eligible.reserve(n);
    for (Vertex v = 1; v < n; ++v)
        if (tree.parent[v] != 0) eligible.push_back(v);
    if (eligible.empty())
        throw StructuralError("add_root_edge: no eligible target (all vertices adjacent to root)");
    return add_root_edge_to(tree, eligible[rng.uniform_below(eligible.size())]);
}

StreamedKappa gw_conditioned_root_kappa(const OffspringLaw& law, std::uint32_t N, RngStream& rng,
                                        std::uint64_t size_cap, std::uint64_t retry_budget) {
    if (N < 1) throw ParameterError("gw_conditioned_root_kappa: N must be >= 1");
    if (retry_budget == 0) retry_budget = 10'000ULL * N;

    // Frontier entries carry the index of the root subtree they belong to;
    // the draw order (breadth-first, one offspring count per vertex) matches
    // sample_gw exactly, so the same stream yields the same tree.
    std::vector<std::uint32_t> frontier, next;
    std::vector<std::uint64_t> class_size;

    std::uint64_t capped_attempts = 0;
    for (std::uint64_t attempt = 1; attempt <= retry_budget; ++attempt) {
        const unsigned root_children = law.sample(rng);
        if (root_children == 0) continue; // height 0 < N
        std::uint64_t total = 1 + root_children;
        class_size.assign(root_children, 1);
        frontier.clear();
        for (unsigned i = 0; i < root_children; ++i) frontier.push_back(i);

        std::uint32_t height = 1; // deepest generation holding vertices
        bool capped = false;
        while (!frontier.empty() && !capped) {
            next.clear();
            for (std::uint32_t cls : frontier) {
                const unsigned c = law.sample(rng);
                class_size[cls] += c;
                total += c;
                for (unsigned i = 0; i < c; ++i) next.push_back(cls);
                // mirror sample_gw's truncation point so identical streams
                // keep identical draw sequences
                if (total > size_cap) {
                    capped = true;
                    break;
                }
            }
            if (!next.empty() && !capped) ++height;
            frontier.swap(next);
        }
        if (capped) {
            ++capped_attempts;
            continue;
        }
        if (height >= N) {
            const std::uint64_t biggest = *std::max_element(class_size.begin(), class_size.end());
            return {total - biggest, total, attempt, capped_attempts};
        }
    }
    throw ResourceError("gw_conditioned_root_kappa: retry budget exhausted");
}

RootedGraph sample_uniform_tree(Vertex n, RngStream& rng, Vertex root) {
    if (n == 1) return RootedGraph(1, {}, 0);
    if (n == 2) return RootedGraph(2, {{0, 1}}, root);
    std::vector<Vertex> seq(n - 2);
    for (auto& x : seq) x = static_cast<Vertex>(rng.uniform_below(n));

    std::vector<std::uint32_t> degree(n, 1);
    for (Vertex x : seq) ++degree[x];

    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (Vertex v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.push(v);

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(n - 1);
    for (Vertex x : seq) {
        const Vertex leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, x);
        if (--degree[x] == 1) leaves.push(x);
    }
    const Vertex a = leaves.top();
    leaves.pop();
    const Vertex b = leaves.top();
    edges.emplace_back(a, b);
    return RootedGraph(n, std::move(edges), root);
}

} // namespace silab
