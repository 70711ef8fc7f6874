#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "silab/errors.hpp"
#include "silab/graph.hpp"
#include "silab/kappa.hpp"
#include "silab/rng.hpp"

using namespace silab;

namespace {

RootedGraph barbell() {
    // two triangles joined by a bridge 2-3
    return RootedGraph(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}}, 0);
}

RootedGraph broom10() {
    // path of 4 from the junction plus 5 leaves at the junction; root = junction
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < 4; ++i) e.emplace_back(i, i + 1); // 0-1-2-3-4
    for (Vertex l = 5; l < 10; ++l) e.emplace_back(0, l);
    return RootedGraph(10, std::move(e), 0);
}

RootedGraph random_connected(Vertex n, RngStream& rng) {
    for (;;) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j)
                if (rng.u01() < 0.4) edges.emplace_back(i, j);
        try {
            return RootedGraph(n, std::move(edges), static_cast<Vertex>(rng.uniform_below(n)));
        } catch (const StructuralError&) {
            // disconnected; draw again
        }
    }
}

RootedGraph random_attachment_tree(Vertex n, RngStream& rng, Vertex root) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.emplace_back(static_cast<Vertex>(rng.uniform_below(v)), v);
    return RootedGraph(n, std::move(edges), root);
}

} // namespace

TEST_CASE("hand-picked kappa values") {
    CHECK(kappa(path_graph(5, 0)).kappa_at_root == 1);
    CHECK(kappa(star_graph(10, 0)).kappa_at_root == 9);
    CHECK(kappa(cycle_graph(5, 2)).kappa_at_root == 5); // 2-edge-connected: n
    CHECK(kappa(barbell()).kappa_at_root == 3);
    CHECK(kappa(path_graph(7, 3)).kappa_at_root == 4);
}

TEST_CASE("bridge profile bookkeeping") {
    const KappaProfile prof = kappa(barbell());
    CHECK(prof.bridges.size() == 1);
    CHECK(prof.bridges[0].root_side + prof.bridges[0].far_side == 6);
    CHECK(prof.bridges[0].root_side == 3);
    CHECK(kappa(cycle_graph(8)).bridges.empty());
}

TEST_CASE("kappa_tree closed form") {
    CHECK(kappa_tree(star_graph(10, 0)) == 9);
    CHECK(kappa_tree(path_graph(7, 3)) == 4);
    CHECK(kappa_tree(broom10()) == 6);
    CHECK_THROWS_AS(kappa_tree(cycle_graph(5)), StructuralError);

    RngStream rng(101, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const Vertex n = 2 + static_cast<Vertex>(rng.uniform_below(199));
        const RootedGraph t = random_attachment_tree(n, rng, static_cast<Vertex>(rng.uniform_below(n)));
        CHECK(kappa_tree(t) == kappa(t).kappa_at_root);
    }
}

TEST_CASE("kappa_cycle_decomposition") {
    CHECK(kappa_cycle_decomposition(cycle_graph(8, 5)) == 8);
    // C_4 with a 3-vertex path hanging off a non-root cycle vertex
    const RootedGraph g(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 5}, {5, 6}}, 0);
    CHECK(kappa_cycle_decomposition(g) == 4);
    CHECK(kappa_cycle_decomposition(g) == kappa(g).kappa_at_root);
    // C_3 with hanging trees of sizes 2 and 5
    const RootedGraph h(10,
                        {{0, 1}, {1, 2}, {2, 0},           // cycle
                         {1, 3}, {3, 4},                   // size-2 tree at 1
                         {2, 5}, {5, 6}, {5, 7}, {7, 8}, {7, 9}}, // size-5 tree at 2
                        0);
    CHECK(kappa_cycle_decomposition(h) == 5);
    CHECK(kappa_cycle_decomposition(h) == kappa(h).kappa_at_root);
    // root off the cycle
    CHECK_THROWS_AS(kappa_cycle_decomposition(g.rerooted(5)), StructuralError);
    CHECK_THROWS_AS(kappa_cycle_decomposition(path_graph(5)), StructuralError);

    RngStream rng(555, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const Vertex cyc = 3 + static_cast<Vertex>(rng.uniform_below(8));
        const Vertex extra = static_cast<Vertex>(rng.uniform_below(30));
        std::vector<std::pair<Vertex, Vertex>> e;
        for (Vertex i = 0; i < cyc; ++i) e.emplace_back(i, (i + 1) % cyc);
        for (Vertex v = cyc; v < cyc + extra; ++v)
            e.emplace_back(static_cast<Vertex>(rng.uniform_below(v)), v);
        const RootedGraph u(cyc + extra, std::move(e), static_cast<Vertex>(rng.uniform_below(cyc)));
        CHECK(kappa_cycle_decomposition(u) == kappa(u).kappa_at_root);
    }
}

TEST_CASE("kappa_d") {
    const RootedGraph c6 = cycle_graph(6, 1);
    CHECK(kappa_d(c6, 2) == kappa(c6).kappa_at_root);
    CHECK(kappa_d(c6, 3) == 1);
    CHECK(kappa_d(complete_graph(4), 3) == 4);
    CHECK_THROWS_AS(kappa_d(c6, 1), ParameterError);
    CHECK_THROWS_AS(kappa_d(complete_graph(30), 6, 1000), ResourceError);
}

TEST_CASE("oracle equivalence on small graphs") {
    CHECK(kappa_oracle(path_graph(5, 0)) == 1);
    CHECK(kappa_oracle(cycle_graph(5)) == 5);
    CHECK_THROWS_AS(kappa_oracle(path_graph(20)), ResourceError);

    RngStream rng(77, 0);
    for (int rep = 0; rep < 2000; ++rep) {
        const Vertex n = 2 + static_cast<Vertex>(rng.uniform_below(6));
        const RootedGraph g = random_connected(n, rng);
        CHECK(kappa_oracle(g) == kappa(g).kappa_at_root);
    }
}

TEST_CASE("kappa never decreases when an edge is added") {
    RngStream rng(404, 0);
    for (int rep = 0; rep < 500; ++rep) {
        const Vertex n = 4 + static_cast<Vertex>(rng.uniform_below(20));
        const RootedGraph g = random_connected(n, rng);
        // find a non-edge
        std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
        for (auto [u, v] : g.edges()) has[u][v] = has[v][u] = 1;
        Vertex a = kNoVertex, b = kNoVertex;
        for (Vertex i = 0; i < n && a == kNoVertex; ++i)
            for (Vertex j = i + 1; j < n; ++j)
                if (!has[i][j]) {
                    a = i;
                    b = j;
                    break;
                }
        if (a == kNoVertex) continue; // complete
        auto edges = g.edges();
        edges.emplace_back(a, b);
        const RootedGraph g2(n, std::move(edges), g.root());
        CHECK(kappa(g2).kappa_at_root >= kappa(g).kappa_at_root);
    }
}

TEST_CASE("per-vertex kappa matches re-rooted computation") {
    RngStream rng(909, 0);
    for (int rep = 0; rep < 300; ++rep) {
        const Vertex n = 3 + static_cast<Vertex>(rng.uniform_below(15));
        const RootedGraph g = rep % 3 == 0 ? random_attachment_tree(n, rng, 0) : random_connected(n, rng);
        const std::vector<Vertex> batch = kappa_all_roots(g);
        for (Vertex v = 0; v < n; ++v)
            CHECK(batch[v] == kappa(g.rerooted(v)).kappa_at_root);
    }
}

TEST_CASE("max kappa over roots") {
    const auto [v_path, k_path] = max_kappa_over_roots(path_graph(7));
    CHECK(v_path == 3);
    CHECK(k_path == 4);
    const auto [v_cyc, k_cyc] = max_kappa_over_roots(cycle_graph(9));
    CHECK(v_cyc == 0);
    CHECK(k_cyc == 9);
    const auto [v_bar, k_bar] = max_kappa_over_roots(barbell());
    CHECK(k_bar == 3);
    CHECK(v_bar == 0); // smallest id among ties
    const KappaProfile prof = kappa(barbell(), true);
    CHECK(prof.kappa_per_vertex.has_value());
    CHECK(prof.kappa_per_vertex->at(4) == 3);
}
