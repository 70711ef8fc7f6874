#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "silab/errors.hpp"
#include "silab/graph.hpp"
#include "silab/gw.hpp"
#include "silab/kappa.hpp"
#include "silab/spread.hpp"
#include "silab/stats.hpp"

using namespace silab;

TEST_CASE("single edge and path traces") {
    const RootedGraph e2 = path_graph(2, 0);
    const SpreadTrace tr = run_spread_with_weights(e2, {3.5});
    CHECK(tr.times == std::vector<double>{0.0, 3.5});
    CHECK(tr.front_sizes == std::vector<std::uint32_t>{1, 0});
    CHECK(tr.first_bottleneck.has_value());
    CHECK(*tr.first_bottleneck == 1);

    const RootedGraph p3 = path_graph(3, 0);
    const SpreadTrace tp = run_spread_with_weights(p3, {2.0, 5.0});
    CHECK(tp.times == std::vector<double>{0.0, 2.0, 7.0});
    CHECK(tp.front_sizes[0] == 1);
    CHECK(tp.front_sizes[1] == 1);
}

TEST_CASE("triangle with fixed weights") {
    // edges: (0,1)=5, (0,2)=2, (1,2)=1; root 0; s=0, a=1, b=2
    const RootedGraph tri(3, {{0, 1}, {0, 2}, {1, 2}}, 0);
    const SpreadTrace tr = run_spread_with_weights(tri, {5.0, 2.0, 1.0});
    CHECK(tr.times == std::vector<double>{0.0, 2.0, 3.0});
    CHECK(tr.infection_order == std::vector<Vertex>{0, 2, 1});
    CHECK(tr.infector_edge[2] == 1);
    CHECK(tr.infector_edge[1] == 2); // through the 1-2 edge
    CHECK(tr.front_sizes == std::vector<std::uint32_t>{2, 2, 0});
    CHECK(!tr.first_bottleneck.has_value());
}

TEST_CASE("brute-force minimax oracle on small graphs") {
    // T_k = min over k-subtrees of max path weight == k-th smallest distance
    RngStream rng(31, 0);
    const WeightLaw law = WeightLaw::power(0.8);
    for (int rep = 0; rep < 100; ++rep) {
        const Vertex n = 3 + static_cast<Vertex>(rng.uniform_below(6));
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j)
                if (rng.u01() < 0.5) edges.emplace_back(i, j);
        RootedGraph g(1, {}, 0);
        try {
            g = RootedGraph(n, std::move(edges), 0);
        } catch (const StructuralError&) {
            continue;
        }
        std::vector<double> w(g.m());
        for (auto& x : w) x = law.sample(rng);
        const SpreadTrace tr = run_spread_with_weights(g, w);

        // grow the infected set greedily by smallest attachment distance —
        // an independent evaluation of the min-max subtree definition
        std::vector<double> dist(g.n(), std::numeric_limits<double>::infinity());
        std::vector<char> in(g.n(), 0);
        dist[0] = 0.0;
        std::vector<double> times{0.0};
        in[0] = 1;
        for (Vertex step = 1; step < g.n(); ++step) {
            Vertex best = kNoVertex;
            double bd = std::numeric_limits<double>::infinity();
            for (Vertex v = 0; v < g.n(); ++v) {
                if (in[v]) continue;
                for (auto [u, e] : g.adjacent(v))
                    if (in[u] && dist[u] + w[e] < bd) {
                        bd = dist[u] + w[e];
                        best = v;
                    }
            }
            dist[best] = bd;
            in[best] = 1;
            times.push_back(bd);
        }
        for (Vertex k = 0; k < g.n(); ++k)
            CHECK(tr.times[k] == doctest::Approx(times[k]).epsilon(1e-12));
    }
}

TEST_CASE("first bottleneck is never below kappa") {
    RngStream rng(32, 0);
    const WeightLaw law = WeightLaw::power(0.8);
    for (int rep = 0; rep < 200; ++rep) {
        const Vertex n = 4 + static_cast<Vertex>(rng.uniform_below(40));
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v = 1; v < n; ++v)
            edges.emplace_back(static_cast<Vertex>(rng.uniform_below(v)), v);
        const RootedGraph t(n, std::move(edges), 0);
        const Vertex kap = kappa(t).kappa_at_root;
        RngStream wr(32, 1000 + rep);
        const SpreadTrace tr = run_spread(t, law, wr);
        REQUIRE(tr.first_bottleneck.has_value()); // trees always bottleneck
        CHECK(*tr.first_bottleneck >= kap);
    }
}

TEST_CASE("endpoint-rooted path bottlenecks at 1 in every run") {
    const RootedGraph p = path_graph(30, 0);
    const WeightLaw law = WeightLaw::power(0.8);
    for (int i = 0; i < 200; ++i) {
        RngStream rng(33, i);
        const SpreadTrace tr = run_spread(p, law, rng);
        CHECK(*tr.first_bottleneck == 1);
    }
}

TEST_CASE("delayed process equals spread on paths and cycles with shared weights") {
    const WeightLaw law = WeightLaw::power(0.8);
    for (int i = 0; i < 50; ++i) {
        RngStream r1(44, i);
        const RootedGraph p = path_graph(12, 0);
        const auto w = draw_weights(p, law, r1);
        const SpreadTrace a = run_spread_with_weights(p, w);
        const SpreadTrace b = run_delayed_with_weights(p, w);
        for (std::size_t k = 0; k < a.times.size(); ++k)
            CHECK(a.times[k] == doctest::Approx(b.times[k]).epsilon(1e-12));
    }
    for (int i = 0; i < 50; ++i) {
        RngStream r1(45, i);
        const RootedGraph c = cycle_graph(15, 0);
        const auto w = draw_weights(c, law, r1);
        const SpreadTrace a = run_spread_with_weights(c, w);
        const SpreadTrace b = run_delayed_with_weights(c, w);
        for (std::size_t k = 0; k < a.times.size(); ++k)
            CHECK(a.times[k] == doctest::Approx(b.times[k]).epsilon(1e-12));
    }
}

TEST_CASE("delayed process stochastically dominates spread (distributional)") {
    // P[T_k > t] <= P[Tbar_k > t] + sampling error, on a small tree-with-cycle
    const RootedGraph g(7, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}}, 0);
    const WeightLaw law = WeightLaw::power(0.8);
    const int M = 10000;
    std::vector<std::vector<double>> ts(g.n()), tds(g.n());
    for (int i = 0; i < M; ++i) {
        RngStream r1(46, i), r2(47, i);
        const SpreadTrace a = run_spread(g, law, r1);
        const SpreadTrace b = run_delayed(g, law, r2);
        for (Vertex k = 0; k < g.n(); ++k) {
            ts[k].push_back(a.times[k]);
            tds[k].push_back(b.times[k]);
        }
    }
    const double slack = 3.0 * std::sqrt(0.25 / M) * 2; // two-sample binomial bound
    for (Vertex k = 1; k < g.n(); ++k) {
        for (double t : {1.0, 2.0, 5.0, 20.0, 100.0}) {
            double pa = 0, pb = 0;
            for (int i = 0; i < M; ++i) {
                pa += ts[k][i] > t;
                pb += tds[k][i] > t;
            }
            CHECK(pa / M <= pb / M + slack);
        }
    }
}

TEST_CASE("delayed keeps at most two selected edges and fills front sizes") {
    const RootedGraph g = star_graph(8, 0);
    RngStream rng(48, 0);
    const SpreadTrace tr = run_delayed(g, WeightLaw::power(0.8), rng);
    CHECK(tr.never_count() == 0);
    CHECK(tr.front_sizes.back() == 0);
    CHECK(std::is_sorted(tr.times.begin(), tr.times.end()));
}

TEST_CASE("Q process") {
    const WeightLaw law = WeightLaw::power(0.8);
    // E[Q_2] = 2a/(2a-1): truncated-mean check at cap 1e4 (sound variance)
    const double alpha = 0.8, cap = 1e4;
    const double mu_cap = 1.0 + (1.0 - std::pow(cap, 1.0 - 2 * alpha)) / (2 * alpha - 1.0);
    RngStream rng(49, 0);
    const int M = 400000;
    double s = 0, s2 = 0;
    for (int i = 0; i < M; ++i) {
        RngStream r(50, i);
        const QTrace q = run_q(law, 2, r);
        const double v = std::min(q.values[1], cap);
        s += v;
        s2 += v * v;
    }
    const double mean = s / M;
    const double se = std::sqrt((s2 / M - mean * mean) / M);
    CHECK(std::abs(mean - mu_cap) < 3.5 * se);

    // strict monotonicity
    for (int i = 0; i < 10000; ++i) {
        RngStream r(51, i);
        const QTrace q = run_q(law, 16, r);
        CHECK(q.values[0] == 0.0);
        for (std::size_t k = 1; k < q.values.size(); ++k) CHECK(q.values[k] > q.values[k - 1]);
    }
    (void)rng;
}

TEST_CASE("bound_recursion satisfies the closed-form bound") {
    auto check_bound = [](double C, double alpha, double b1) {
        const auto b = bound_recursion(C, b1, alpha, 10000);
        const double d = std::max(b1, std::pow(alpha * C, 1.0 / alpha));
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double bound = d * std::pow(static_cast<double>(i + 1), 1.0 / alpha);
            CHECK(b[i] <= bound * (1.0 + 1e-12));
        }
    };
    check_bound(1.0, 0.8, 1.0);
    check_bound(2.0, 0.6, 5.0);
    const auto flat = bound_recursion(0.0, 3.0, 0.5, 100);
    for (double v : flat) CHECK(v == 3.0);
}

TEST_CASE("star_tail formula and simulation") {
    // ascending order-statistic convention: the k-th of k+1 draws is the
    // second largest, so k=1 reduces to the smaller of two draws and the
    // formula collapses to t^{-2a}
    for (double t : {1.5, 3.0, 10.0})
        CHECK(star_tail(1, t, 0.8) == doctest::Approx(std::pow(t, -1.6)));
    CHECK_THROWS_AS(star_tail(1, 0.5, 0.8), ParameterError);

    // alpha=0.8, k=5, t=10 vs direct order-statistic simulation
    const double expect = star_tail(5, 10.0, 0.8);
    RngStream rng(52, 0);
    const WeightLaw law = WeightLaw::power(0.8);
    const int M = 1000000;
    int hits = 0;
    std::vector<double> draw(6);
    for (int i = 0; i < M; ++i) {
        for (auto& d : draw) d = law.sample(rng);
        std::nth_element(draw.begin(), draw.begin() + 4, draw.end());
        hits += draw[4] > 10.0; // 5th order statistic of 6
    }
    const double se = std::sqrt(expect * (1 - expect) / M);
    CHECK(std::abs(double(hits) / M - expect) < 3 * se);

    // asymptotic decay index -2a on a log grid
    std::vector<double> ts, tails;
    for (double t = 100.0; t <= 10000.0; t *= 2.0) {
        ts.push_back(t);
        tails.push_back(star_tail(5, t, 0.8));
    }
    const SlopeFit fit = fit_exponent(ts, tails);
    CHECK(std::abs(fit.slope + 1.6) < 0.1);
}

TEST_CASE("trace CSV serializes inf as literal token") {
    SpreadTrace tr;
    tr.times = {0.0, 1.5, std::numeric_limits<double>::infinity()};
    tr.infection_order = {0, 1, 2};
    tr.infector_edge = {kNoEdge, 0, 1};
    tr.front_sizes = {1, 1, 0};
    std::stringstream ss;
    write_trace_csv(ss, tr);
    CHECK(ss.str().find(",inf,") != std::string::npos);
    CHECK(ss.str().find("-1") != std::string::npos);
    CHECK(tr.never_count() == 1);
}
