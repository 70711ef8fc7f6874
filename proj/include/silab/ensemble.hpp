#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "silab/graph.hpp"
#include "silab/spread.hpp"
#include "silab/weight_law.hpp"

namespace silab {

enum class RegenMode { FixedGraph, FreshGraph };

/// Stream-index layout inside one ensemble: run i draws weights from
/// (master_seed, i); graph generation uses (master_seed, kGraphStreamBase)
/// for FixedGraph and (master_seed, kGraphStreamBase + i) for FreshGraph.
inline constexpr std::uint64_t kGraphStreamBase = 0x8000000000000000ull;

struct EnsembleSpec {
    std::shared_ptr<const RootedGraph> graph;        // FixedGraph with a ready graph
    std::function<RootedGraph(RngStream&)> generator; // used when graph is null
    WeightLaw law;
    std::uint32_t runs = 0;
    std::uint64_t master_seed = 0;
    RegenMode mode = RegenMode::FixedGraph;
    std::uint32_t batches = 20;
    unsigned workers = 0;        // 0 = hardware concurrency
    bool keep_increments = false;
};

/// Aggregated spreading-curve statistics over M runs. Row k (1-based) of
/// the CSV carries mean T_k plus the stability statistics of the increment
/// T_k - T_{k-1}. Batches are contiguous run-index ranges; all reductions
/// happen in fixed order, so results are bit-identical for any worker count.
struct CurveStats {
    std::uint32_t n = 0; // common prefix length across runs
    std::uint32_t runs = 0;
    std::uint32_t batches = 0;
    std::vector<double> sum;              // per k: sum of T_k over runs
    std::vector<double> batch_sum;        // batches x n, row-major
    std::vector<std::uint32_t> batch_count;
    std::vector<double> inc_max;          // per k in [1, n): max over runs of T_{k+1}-T_k
    std::vector<std::uint32_t> front_min; // per k: min over runs of the front size at T_k
    std::vector<std::uint64_t> never;     // per k
    std::vector<double> increments;       // runs x (n-1), row-major; kept on request

    double mean(std::uint32_t k) const { return sum[k - 1] / runs; } // k is 1-based
    double inc_mean(std::uint32_t k) const;                          // increment k -> k+1
    double inc_batch_cv(std::uint32_t k) const;
    double inc_max_share(std::uint32_t k) const;
    bool has_increments() const { return !increments.empty(); }
    std::vector<double> increment_column(std::uint32_t k) const;
};

CurveStats run_ensemble(const EnsembleSpec& spec);

/// CSV columns: k,mean,batch_cv,max_share,n_runs (see CurveStats).
void write_curve_csv(std::ostream& out, const CurveStats& stats);

/// Instability rule for the first uncontrolled plateau: the two statistical
/// signals (largest single-run share of the increment sum above max_share,
/// batch-mean coefficient of variation above cv) gated by the bottleneck
/// mechanism itself: some run must actually have reached infection count k
/// with at most one active edge (front_min <= 1). Below the bottleneck
/// index every realization keeps two or more active edges, so the gate makes
/// false positives below kappa structurally impossible; the statistical
/// thresholds are pilot-calibrated and live in the defaults registry.
struct PlateauThresholds {
    double cv = 0.3;
    double max_share = 0.05;
    std::uint32_t front_cap = 1;
};
PlateauThresholds default_plateau_thresholds();

/// Smallest k with an unstable increment (k -> k+1), or nullopt. Requires
/// at least 10 batches and 1000 runs.
std::optional<std::uint32_t> plateau_detect(const CurveStats& stats,
                                            const PlateauThresholds& thresholds =
                                                default_plateau_thresholds());

} // namespace silab
