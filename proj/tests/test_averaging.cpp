#include <doctest.h>

#include <cmath>

#include "fpp/averaging.hpp"
#include "fpp/staircase.hpp"
#include "test_util.hpp"

using namespace fpp;
using fpp::test::env_with_bits;
using fpp::test::l1;

TEST_CASE("default shift scale") {
    CHECK(default_shift_m(1) == 1);
    CHECK(default_shift_m(15) == 1);
    CHECK(default_shift_m(16) == 2);
    CHECK(default_shift_m(81) == 3);
    CHECK(default_shift_m(10000) == 10);
}

TEST_CASE("shift sampling is deterministic and in range") {
    const ShiftSample s1 = sample_shift(3, 4, 55, 9);
    const ShiftSample s2 = sample_shift(3, 4, 55, 9);
    CHECK(s1.bits == s2.bits);
    CHECK(s1.z == s2.z);
    REQUIRE(s1.z.size() == 3);
    REQUIRE(s1.bits.size() == 3u * 16);
    for (int zi : s1.z) {
        CHECK(zi >= 0);
        CHECK(zi <= 4);
    }
    for (int i = 0; i < 3; ++i) CHECK(s1.z[i] == staircase_g(s1.row(i), 4));
    const ShiftSample s3 = sample_shift(3, 4, 55, 10);
    CHECK(s1.bits != s3.bits);
}

TEST_CASE("flipping one auxiliary bit moves each coordinate by at most one") {
    // Exhaustive for d = 1, m <= 3.
    for (int m : {1, 2, 3}) {
        const int nb = m * m;
        for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
            std::vector<std::uint8_t> bits(nb);
            for (int k = 0; k < nb; ++k) bits[k] = (mask >> k) & 1;
            const ShiftSample base = make_shift(1, m, bits);
            for (int k = 0; k < nb; ++k) {
                auto flipped = bits;
                flipped[k] ^= 1;
                const ShiftSample other = make_shift(1, m, flipped);
                CHECK(std::abs(base.z[0] - other.z[0]) <= 1);
            }
        }
    }
}

TEST_CASE("zero bits give the unshifted distance") {
    const WeightedGraph g = build_box(2, {8, 8});
    const ShiftSample zero = make_shift(2, 2, std::vector<std::uint8_t>(8, 0));
    REQUIRE(zero.z == std::vector<int>{0, 0});
    for (int i = 0; i < 20; ++i) {
        const Environment env = sample_environment(g, 1.0, 2.0, 61, i);
        CHECK(shifted_distance(zero, env, {1, 1}, {5, 4}) ==
              distance(env, g.vertex_at({1, 1}), g.vertex_at({5, 4})));
    }
}

TEST_CASE("shifted distance on all-a environments is a * L1") {
    const WeightedGraph g = build_box(2, {10, 10});
    const Environment env = env_with_bits(g, 1.0, 2.0, 0);
    for (int i = 0; i < 30; ++i) {
        const ShiftSample s = sample_shift(2, 2, 71, i);
        CHECK(shifted_distance(s, env, {1, 1}, {6, 3}) == doctest::Approx(5.0 + 2.0));
    }
}

TEST_CASE("shifted endpoints outside the box are rejected") {
    const WeightedGraph g = build_box(2, {4, 4});
    const ShiftSample s = make_shift(2, 2, {1, 1, 0, 0, 0, 0, 0, 0});  // z = (2, 0)
    const Environment env = sample_environment(g, 1.0, 2.0, 0, 0);
    CHECK_THROWS_AS(shifted_distance(s, env, {2, 0}, {3, 3}), std::out_of_range);
}

TEST_CASE("shift perturbs the distance by at most 2 b d m") {
    const int d = 2, m = 2;
    const WeightedGraph g = build_box(2, {16, 16});
    const std::vector<int> from = {3, 3}, to = {10, 9};
    for (int i = 0; i < 1000; ++i) {
        const Environment env = sample_environment(g, 1.0, 2.0, 83, i);
        const ShiftSample s = sample_shift(d, m, 91, i);
        const double f = distance(env, g.vertex_at(from), g.vertex_at(to));
        const double ft = shifted_distance(s, env, from, to);
        CHECK(std::abs(ft - f) <= 2.0 * 2.0 * d * m + 1e-12);
    }
}

TEST_CASE("influence of an edge far from every shifted geodesic is zero") {
    const WeightedGraph g = build_box(2, {12, 12});
    // Query runs from (4,4) to (7,4) with m = 1; shifted geodesics stay inside
    // the a/b envelope, far from the corner edge.
    EdgeId corner = 0;
    bool found = false;
    for (EdgeId e = 0; e < g.edge_count() && !found; ++e) {
        const Edge& ed = g.edge(e);
        if (g.coords(ed.u) == std::vector<int>{0, 11} ||
            g.coords(ed.v) == std::vector<int>{0, 11}) {
            corner = e;
            found = true;
        }
    }
    REQUIRE(found);
    const InfluenceEstimate est =
        influence_estimate(corner, g, 1.0, 2.0, {4, 4}, {3, 0}, 1, 101, 300);
    CHECK(est.influence.count() == 300);
    CHECK(est.influence.sum() == 0.0);
    CHECK(est.membership.sum() == 0.0);
}

TEST_CASE("influence is bounded by twice the membership rate plus noise") {
    const WeightedGraph g = build_box(2, {14, 14});
    const int n = 400;
    for (EdgeId e : std::vector<EdgeId>{20, 57, 130}) {
        const InfluenceEstimate est =
            influence_estimate(e, g, 1.0, 2.0, {3, 3}, {7, 0}, 2, 131, n);
        const double inf = est.influence.mean();
        const double mem = est.membership.mean();
        const double se = std::sqrt((est.influence.variance() + 4.0 * est.membership.variance()) /
                                    n);
        CHECK(inf <= 2.0 * mem + 4.0 * se + 1e-12);
    }
}

TEST_CASE("influence estimates are deterministic in the seed") {
    const WeightedGraph g = build_box(2, {10, 10});
    const InfluenceEstimate a = influence_estimate(11, g, 1.0, 2.0, {2, 2}, {5, 0}, 2, 7, 50);
    const InfluenceEstimate b = influence_estimate(11, g, 1.0, 2.0, {2, 2}, {5, 0}, 2, 7, 50);
    CHECK(a.influence.sum() == b.influence.sum());
    CHECK(a.membership.sum() == b.membership.sum());
}
