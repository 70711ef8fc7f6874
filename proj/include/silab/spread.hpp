#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "silab/graph.hpp"
#include "silab/weight_law.hpp"

namespace silab {

/// One realization of a spreading process.
///
/// times[k-1] is T_k (T_1 = 0, nondecreasing); infection_order[k-1] is the
/// k-th infected vertex; infector_edge is indexed by vertex (kNoEdge at the
/// root); front_sizes[k-1] is the number of active edges (exactly one
/// endpoint infected) right after the k-th infection. Vertices a process
/// never reaches carry +infinity in times ("never"); statistics must treat
/// those entries explicitly rather than average over them.
struct SpreadTrace {
    std::vector<double> times;
    std::vector<Vertex> infection_order;
    std::vector<EdgeId> infector_edge;
    std::vector<std::uint32_t> front_sizes;
    std::optional<std::uint32_t> first_bottleneck; // smallest k < n with front <= 1

    std::size_t n() const { return times.size(); }
    std::size_t never_count() const;
    double increment(std::size_t k) const { return times[k] - times[k - 1]; } // T_{k+1} - T_k
};

/// Draw one weight per edge, in edge-id order, from the given stream.
std::vector<double> draw_weights(const RootedGraph& g, const WeightLaw& law, RngStream& rng);

/// Single-source weighted shortest-path distances from the root (Dijkstra).
/// Ties between equal-length paths keep the smaller final edge id.
struct Distances {
    std::vector<double> dist;
    std::vector<EdgeId> parent_edge;
};
Distances compute_distances(const RootedGraph& g, const std::vector<double>& weights);

/// SI/first-passage spreading: i.i.d. edge weights, T_k = k-th smallest
/// root distance, infector edge = final edge of the shortest path.
SpreadTrace run_spread(const RootedGraph& g, const WeightLaw& law, RngStream& rng);
SpreadTrace run_spread_with_weights(const RootedGraph& g, const std::vector<double>& weights);

/// Delayed comparison process: at most two concurrently transmitting edges,
/// always the smallest-id eligible active edges. A selected edge fires at
/// (selection time + its weight); a surviving selected edge keeps its own
/// clock. When a selected edge's susceptible endpoint is infected through
/// the other edge, the slot is refilled immediately at the event time.
SpreadTrace run_delayed(const RootedGraph& g, const WeightLaw& law, RngStream& rng);
SpreadTrace run_delayed_with_weights(const RootedGraph& g, const std::vector<double>& weights);

/// Q process: Q_1 = 0, Q_2 = min{X,Y}, then Q_{k+1} = Q_k + min{fresh draw,
/// residual draw at age Q_k}. One edge is always as old as the process.
struct QTrace {
    std::vector<double> values; // Q_1..Q_kmax
};
QTrace run_q(const WeightLaw& law, std::uint32_t k_max, RngStream& rng);

/// Iterates b_{n+1} = b_n + C b_n^{1-alpha} at equality and returns b_1..b_n;
/// deterministic oracle for the bound b_n <= max(b_1, (alpha C)^{1/alpha}) n^{1/alpha}.
std::vector<double> bound_recursion(double C, double b1, double alpha, std::uint32_t n);

/// Exact tail of the k-th order statistic of k+1 i.i.d. pow(alpha,1) draws:
/// 1 - (k+1)(1-t^-a)^k t^-a - (1-t^-a)^{k+1}, for t > 1.
double star_tail(std::uint32_t k, double t, double alpha);

/// CSV export: columns k,T_k,front_size,infector_edge ("never" times print
/// as the literal token inf; the root's infector edge prints as -1).
void write_trace_csv(std::ostream& out, const SpreadTrace& trace);

} // namespace silab
