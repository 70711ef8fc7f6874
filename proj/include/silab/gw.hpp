#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "silab/graph.hpp"
#include "silab/rng.hpp"

namespace silab {

/// Critical offspring law (mean exactly 1, finite positive variance).
struct OffspringLaw {
    enum class Kind { Poisson1, GeometricHalf, BinomialCritical };
    Kind kind = Kind::Poisson1;
    unsigned binom_k = 0; // BinomialCritical(k) = Binomial(k, 1/k), k >= 2

    static OffspringLaw poisson1() { return {Kind::Poisson1, 0}; }
    static OffspringLaw geometric_half() { return {Kind::GeometricHalf, 0}; }
    static OffspringLaw binomial_critical(unsigned k);

    double sigma2() const; // 1, 2, 1 - 1/k
    double pmf(unsigned k) const;
    unsigned sample(RngStream& rng) const;
    /// Size-biased law, P[k] = k p_k. Never zero.
    unsigned sample_size_biased(RngStream& rng) const;
    std::string name() const;
};

/// Rooted ordered tree, vertices in breadth-first order (root = 0).
struct LabeledTree {
    std::vector<Vertex> parent;            // kNoVertex at the root
    std::vector<std::uint32_t> depth;
    std::vector<std::uint64_t> gen_sizes;  // Z_0..Z_H
    std::uint32_t height = 0;
    bool truncated = false;                // vertex budget hit; tree incomplete

    std::size_t size() const { return parent.size(); }
    RootedGraph to_rooted_graph() const;   // edge id of vertex v>=1 is v-1
};

/// Unconditioned critical GW tree, breadth-first. Generation stops at
/// depth_cap when nonzero (vertices at that depth get no children), and the
/// build aborts with tree.truncated once the vertex count would exceed
/// size_cap; the caller decides what a truncated result means.
LabeledTree sample_gw(const OffspringLaw& law, RngStream& rng, std::uint64_t size_cap,
                      std::uint32_t depth_cap = 0);

struct ConditionedSample {
    LabeledTree tree;
    std::uint64_t attempts = 0;        // accepted attempt included
    std::uint64_t capped_attempts = 0; // attempts dropped at the size cap
};

/// Sampling of (T | Z_N > 0) by rejection over unconditioned trees; the
/// rejection is exact except that attempts larger than size_cap are dropped
/// and counted (the size law has infinite mean, so no finite budget finishes
/// every tree). Callers sensitive to the conditioning bias keep size_cap
/// far above N^2 and watch capped_attempts. Expected rejections are about
/// sigma^2 N / 2; an exhausted retry budget raises ResourceError.
ConditionedSample sample_gw_conditioned(const OffspringLaw& law, std::uint32_t N, RngStream& rng,
                                        std::uint64_t size_cap = 10'000'000,
                                        std::uint64_t retry_budget = 0 /* 0 = 10^4 N */);

struct KestenSample {
    LabeledTree tree;
    std::vector<Vertex> spine; // depth+1 vertices, root first
};

/// Kesten's infinite-tree construction truncated at the given depth: a spine
/// of special vertices with size-biased offspring, one uniformly chosen
/// child special; normal vertices reproduce unconditioned. All growth stops
/// at the global depth.
KestenSample sample_kesten(const OffspringLaw& law, std::uint32_t depth, RngStream& rng);

/// Tree plus one edge from the root to a vertex chosen uniformly from
/// V \ ({root} ∪ children(root)); the result is simple, unicyclic, and the
/// root lies on the cycle. Structural error when no eligible target exists.
RootedGraph add_root_edge(const LabeledTree& tree, RngStream& rng);
RootedGraph add_root_edge_to(const LabeledTree& tree, Vertex target); // deterministic variant

/// Streaming kappa of a conditioned GW tree at the root: identical draw
/// sequence to sample_gw/sample_gw_conditioned (breadth-first, one offspring
/// count per vertex) but stores only per-root-subtree counts, so trees far
/// beyond memory are still measurable. kappa = |T| - max root subtree.
struct StreamedKappa {
    std::uint64_t kappa = 0;
    std::uint64_t size = 0;
    std::uint64_t attempts = 0;
    std::uint64_t capped_attempts = 0; // dropped at the size cap, as above
};
StreamedKappa gw_conditioned_root_kappa(const OffspringLaw& law, std::uint32_t N, RngStream& rng,
                                        std::uint64_t size_cap = 100'000'000,
                                        std::uint64_t retry_budget = 0);

/// Uniform random labeled tree on n vertices (Pruefer decode).
RootedGraph sample_uniform_tree(Vertex n, RngStream& rng, Vertex root = 0);

} // namespace silab
