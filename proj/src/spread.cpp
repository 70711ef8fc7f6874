#include "silab/spread.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <set>

#include "silab/errors.hpp"

namespace silab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Infection order, front sizes and first bottleneck from per-vertex
// infection times. Shared by the plain and the delayed process.
SpreadTrace assemble_trace(const RootedGraph& g, const std::vector<double>& time_of,
                           const std::vector<EdgeId>& parent_edge) {
    const Vertex n = g.n();
    SpreadTrace tr;
    tr.infector_edge = parent_edge;

    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (time_of[a] != time_of[b]) return time_of[a] < time_of[b];
        if (parent_edge[a] != parent_edge[b]) return parent_edge[a] < parent_edge[b];
        return a < b;
    });

    tr.infection_order = order;
    tr.times.resize(n);
    tr.front_sizes.resize(n);

    std::vector<char> infected(n, 0);
    std::uint32_t active = 0;
    for (Vertex k = 0; k < n; ++k) {
        const Vertex v = order[k];
        tr.times[k] = time_of[v];
        infected[v] = 1;
        for (auto [w, e] : g.adjacent(v)) {
            if (infected[w])
                --active;
            else
                ++active;
        }
        tr.front_sizes[k] = active;
        if (!tr.first_bottleneck && active <= 1 && k + 1 < n)
            tr.first_bottleneck = k + 1; // k+1 infections so far
    }
    return tr;
}

} // namespace

std::size_t SpreadTrace::never_count() const {
    std::size_t c = 0;
    for (double t : times)
        if (!std::isfinite(t)) ++c;
    return c;
}

std::vector<double> draw_weights(const RootedGraph& g, const WeightLaw& law, RngStream& rng) {
    std::vector<double> w(g.m());
    for (EdgeId e = 0; e < g.m(); ++e) w[e] = law.sample(rng);
    return w;
}

Distances compute_distances(const RootedGraph& g, const std::vector<double>& weights) {
    if (weights.size() != g.m()) throw ParameterError("compute_distances: weight count mismatch");
    const Vertex n = g.n();
    Distances d;
    d.dist.assign(n, kInf);
    d.parent_edge.assign(n, kNoEdge);
    d.dist[g.root()] = 0.0;

    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, g.root());
    std::vector<char> done(n, 0);

    while (!heap.empty()) {
        const auto [dv, v] = heap.top();
        heap.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (auto [w, e] : g.adjacent(v)) {
            if (done[w]) continue;
            const double cand = dv + weights[e];
            if (cand < d.dist[w]) {
                d.dist[w] = cand;
                d.parent_edge[w] = e;
                heap.emplace(cand, w);
            } else if (cand == d.dist[w] && e < d.parent_edge[w]) {
                d.parent_edge[w] = e; // generic tie-break on the edge order
            }
        }
    }
    return d;
}

SpreadTrace run_spread_with_weights(const RootedGraph& g, const std::vector<double>& weights) {
    const Distances d = compute_distances(g, weights);
    return assemble_trace(g, d.dist, d.parent_edge);
}

SpreadTrace run_spread(const RootedGraph& g, const WeightLaw& law, RngStream& rng) {
    return run_spread_with_weights(g, draw_weights(g, law, rng));
}

SpreadTrace run_delayed_with_weights(const RootedGraph& g, const std::vector<double>& weights) {
    if (weights.size() != g.m()) throw ParameterError("run_delayed: weight count mismatch");
    const Vertex n = g.n();
    std::vector<double> time_of(n, kInf);
    std::vector<EdgeId> parent_edge(n, kNoEdge);
    std::vector<char> infected(n, 0);

    std::set<EdgeId> active; // edges with exactly one infected endpoint
    auto on_infect = [&](Vertex v) {
        infected[v] = 1;
        for (auto [w, e] : g.adjacent(v)) {
            if (infected[w])
                active.erase(e);
            else
                active.insert(e);
        }
    };

    struct Slot {
        EdgeId edge;
        double fire_time;
    };
    std::vector<Slot> slots; // at most 2

    auto refill = [&](double now) {
        for (EdgeId e : active) {
            if (slots.size() >= 2) break;
            const bool taken = std::any_of(slots.begin(), slots.end(),
                                           [e](const Slot& s) { return s.edge == e; });
            if (!taken) slots.push_back({e, now + weights[e]});
        }
    };

    time_of[g.root()] = 0.0;
    on_infect(g.root());
    refill(0.0);

    Vertex remaining = n - 1;
    while (remaining > 0 && !slots.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < slots.size(); ++i) {
            if (slots[i].fire_time < slots[best].fire_time ||
                (slots[i].fire_time == slots[best].fire_time && slots[i].edge < slots[best].edge))
                best = i;
        }
        const Slot ev = slots[best];
        slots.erase(slots.begin() + static_cast<long>(best));

        auto [a, b] = g.edge(ev.edge);
        const Vertex v = infected[a] ? b : a;
        time_of[v] = ev.fire_time;
        parent_edge[v] = ev.edge;
        on_infect(v);
        --remaining;

        // Drop selected edges that became internal through this infection;
        // their slots are refilled with fresh clocks at the event time.
        std::erase_if(slots, [&](const Slot& s) {
            auto [x, y] = g.edge(s.edge);
            return infected[x] && infected[y];
        });
        refill(ev.fire_time);
    }
    return assemble_trace(g, time_of, parent_edge);
}

SpreadTrace run_delayed(const RootedGraph& g, const WeightLaw& law, RngStream& rng) {
    return run_delayed_with_weights(g, draw_weights(g, law, rng));
}

QTrace run_q(const WeightLaw& law, std::uint32_t k_max, RngStream& rng) {
    if (k_max < 2) throw ParameterError("run_q: k_max must be >= 2");
    QTrace q;
    q.values.resize(k_max);
    q.values[0] = 0.0;
    q.values[1] = std::min(law.sample(rng), law.sample(rng));
    for (std::uint32_t k = 2; k < k_max; ++k) {
        const double age = q.values[k - 1];
        q.values[k] = age + std::min(law.sample(rng), law.sample_residual(age, rng));
    }
    return q;
}

std::vector<double> bound_recursion(double C, double b1, double alpha, std::uint32_t n) {
    if (!(C >= 0.0) || !(b1 > 0.0)) throw ParameterError("bound_recursion: need C >= 0, b1 > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("bound_recursion: alpha in (0,1)");
    std::vector<double> b(n);
    if (n == 0) return b;
    b[0] = b1;
    for (std::uint32_t i = 1; i < n; ++i) b[i] = b[i - 1] + C * std::pow(b[i - 1], 1.0 - alpha);
    return b;
}

double star_tail(std::uint32_t k, double t, double alpha) {
    if (k < 1) throw ParameterError("star_tail: k must be >= 1");
    if (!(t > 1.0)) throw ParameterError("star_tail: t must exceed 1");
    if (!(alpha > 0.0)) throw ParameterError("star_tail: alpha must be positive");
    const double q = std::pow(t, -alpha);
    const double p = 1.0 - q;
    return 1.0 - (k + 1.0) * std::pow(p, static_cast<double>(k)) * q -
           std::pow(p, static_cast<double>(k + 1));
}

void write_trace_csv(std::ostream& out, const SpreadTrace& trace) {
    out << "k,T_k,front_size,infector_edge\n";
    char buf[64];
    for (std::size_t k = 0; k < trace.n(); ++k) {
        const Vertex v = trace.infection_order[k];
        const EdgeId e = trace.infector_edge[v];
        std::snprintf(buf, sizeof buf, "%.17g", trace.times[k]);
        out << (k + 1) << ',' << buf << ',' << trace.front_sizes[k] << ','
            << (e == kNoEdge ? -1 : static_cast<long long>(e)) << '\n';
    }
}

} // namespace silab
