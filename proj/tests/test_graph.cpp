#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "silab/errors.hpp"
#include "silab/graph.hpp"

using namespace silab;

TEST_CASE("validation rejects bad graphs") {
    CHECK_THROWS_AS(RootedGraph(3, {{0, 0}}, 0), StructuralError);          // loop
    CHECK_THROWS_AS(RootedGraph(3, {{0, 1}, {1, 0}, {1, 2}}, 0), StructuralError); // multi
    CHECK_THROWS_AS(RootedGraph(4, {{0, 1}, {2, 3}}, 0), StructuralError);  // disconnected
    CHECK_THROWS_AS(RootedGraph(3, {{0, 1}, {1, 2}}, 3), StructuralError);  // root range
    CHECK_THROWS_AS(RootedGraph(3, {{0, 5}}, 0), StructuralError);          // vertex range
}

TEST_CASE("factories and accessors") {
    const RootedGraph p = path_graph(5, 0);
    CHECK(p.n() == 5);
    CHECK(p.m() == 4);
    CHECK(p.is_tree());
    const RootedGraph c = cycle_graph(6, 2);
    CHECK(c.is_unicyclic());
    CHECK(c.root() == 2);
    const RootedGraph s = star_graph(10, 0);
    CHECK(s.degree(0) == 9);
    CHECK(s.degree(3) == 1);
    CHECK(complete_graph(5).m() == 10);
    CHECK(c.other_end(0, 0) == 1);
    CHECK(c.rerooted(4).root() == 4);
}

TEST_CASE("edge list round trip is exact") {
    const RootedGraph g = cycle_graph(7, 3);
    std::stringstream ss;
    write_edge_list(ss, g);
    const RootedGraph h = read_edge_list(ss);
    CHECK(h.n() == g.n());
    CHECK(h.root() == g.root());
    CHECK(h.edges() == g.edges());

    std::stringstream ss2;
    write_edge_list(ss2, h);
    std::stringstream ss3;
    write_edge_list(ss3, g);
    CHECK(ss2.str() == ss3.str());
}

TEST_CASE("reader reports malformed input with line numbers") {
    std::stringstream bad1("3 2\n0 1\n1 2\n");
    CHECK_THROWS_AS(read_edge_list(bad1), DataError);
    std::stringstream bad2("3 2 0\n0 1\nx y\n");
    try {
        read_edge_list(bad2);
        CHECK(false);
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::stringstream bad3("3 2 0\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(bad3), DataError);
}
