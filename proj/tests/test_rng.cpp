#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "silab/rng.hpp"

using namespace silab;

TEST_CASE("same address reproduces bit-identical sequences") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices differ") {
    RngStream a(42, 0), b(42, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += a.next_u64() == b.next_u64();
    CHECK(equal == 0);
}

TEST_CASE("u01 stays strictly inside (0,1)") {
    RngStream r(1, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.u01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_below is uniform-ish and in range") {
    RngStream r(3, 5);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 100000; ++i) ++counts[r.uniform_below(10)];
    for (int c : counts) {
        CHECK(c > 9300);
        CHECK(c < 10700);
    }
}

TEST_CASE("hashed_u01 is deterministic and spread out") {
    CHECK(hashed_u01(9, 100) == hashed_u01(9, 100));
    std::set<double> vals;
    for (int i = 0; i < 1000; ++i) vals.insert(hashed_u01(9, i));
    CHECK(vals.size() == 1000);
}
