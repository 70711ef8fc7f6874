#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "silab/gw.hpp"
#include "silab/weight_law.hpp"

namespace silab {

struct CheckResult {
    std::string name;
    double value = 0.0;
    std::string constraint;     // human-readable, e.g. "<= 2"
    std::string threshold_key;  // defaults-registry key backing the bound
    bool pass = false;
};

/// Result document of one statistical experiment. Serializes with the full
/// set of thresholds used (value + provenance) so verdicts stay auditable.
struct TheoremReport {
    std::string experiment;
    nlohmann::json params;
    nlohmann::json statistics;
    std::vector<CheckResult> checks;

    bool pass() const;
    nlohmann::json to_json() const;
};

/// Spreading-curve exponent on the cycle C_n: log-log slope of mean T_k
/// over a geometric k grid in [16, n/2].
TheoremReport experiment_cycle_scaling(double alpha, std::uint32_t n, std::uint32_t runs,
                                       std::uint64_t seed, unsigned workers = 0);

/// mean T_{n-1} scaled by n^{-1/alpha} across the star sizes; checks the
/// spread of the scaled values.
TheoremReport experiment_star_scaling(double alpha, std::vector<std::uint32_t> ns,
                                      std::uint32_t runs, std::uint64_t seed,
                                      unsigned workers = 0);

/// E[Q_k] growth exponent plus the residual-minimum quadrature cross-check.
TheoremReport experiment_q_scaling(double alpha, std::uint32_t k_max, std::uint32_t runs,
                                   std::uint64_t seed, unsigned workers = 0);

/// kappa tightness of conditioned GW trees across an N grid.
TheoremReport experiment_gw_tightness(const OffspringLaw& law, std::vector<std::uint32_t> Ns,
                                      std::uint32_t runs, std::uint64_t seed,
                                      unsigned workers = 0);

/// kappa of conditioned GW trees with the extra root edge.
TheoremReport experiment_gw_extra_edge(const OffspringLaw& law, std::uint32_t N,
                                       std::uint32_t runs, std::uint64_t seed,
                                       unsigned workers = 0);

/// kappa and color balance of UST(n) plus the extra edge, with a law
/// stability check across the n grid {n/2, n, 2n}.
TheoremReport experiment_ust(std::uint32_t n, std::uint32_t runs, std::uint64_t seed,
                             unsigned workers = 0);

/// Near-critical Erdos-Renyi experiments: tree-cluster frequency contrast,
/// kappa tightness at a random vertex, max-kappa proportion, surplus-vs-
/// lambda growth, and the large-lambda reachability check.
TheoremReport experiment_er(std::uint32_t n_small, std::uint32_t n_large, std::uint32_t runs,
                            std::uint64_t seed, unsigned workers = 0);

/// Urn property suite: classic-urn uniformity, conservation, martingale
/// regression, symmetry, and the Wilson-fed boundary mass.
TheoremReport experiment_urn(std::uint32_t wilson_n, std::uint32_t wilson_runs,
                             std::uint64_t seed, unsigned workers = 0);

/// Shared worker-pool helper: fn(i) for i in [0, count) using per-index
/// state only; aggregation stays with the caller, in index order.
void parallel_runs(std::uint32_t count, unsigned workers, const std::function<void(std::uint32_t)>& fn);

} // namespace silab
