#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fpp/circumference.hpp"
#include "fpp/metric.hpp"
#include "test_util.hpp"

using namespace fpp;
using fpp::test::env_with_bits;

TEST_CASE("pure cycle circumference is the total weight") {
    const WeightedGraph g = build_torus_product(FiberGraph::single_vertex(), 6);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        const Environment env = env_with_bits(g, 1.0, 2.0, mask);
        double total = 0.0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) total += env.weight(e);
        CHECK(circumference_length(env).first == doctest::Approx(total));
        CHECK(circumference_bruteforce(env) == doctest::Approx(total));
    }
}

TEST_CASE("all-a environment gives c_G = a * n") {
    for (int n : {3, 4, 5}) {
        const WeightedGraph g = build_torus_product(FiberGraph::cycle(3), n);
        const Environment env = env_with_bits(g, 1.0, 2.0, 0);
        const auto [len, path] = circumference_length(env);
        CHECK(len == doctest::Approx(1.0 * n));
        CHECK(path.winding == 1);
        CHECK(path.edges.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("K2 x Z/3Z all-a gives the pure fiber cycle 3a") {
    const WeightedGraph g = build_torus_product(FiberGraph::complete(2), 3);
    const Environment env = env_with_bits(g, 1.0, 2.0, 0);
    CHECK(circumference_bruteforce(env) == doctest::Approx(3.0));
    CHECK(circumference_length(env).first == doctest::Approx(3.0));
}

TEST_CASE("unrolled search equals brute force on random small instances") {
    const WeightedGraph k2 = build_torus_product(FiberGraph::complete(2), 3);
    const WeightedGraph sq3 = build_torus_product(FiberGraph::cycle(3), 3);
    for (const WeightedGraph& g : {k2, sq3}) {
        for (int i = 0; i < 50; ++i) {
            const Environment env = sample_environment(g, 1.0, 2.0, 17, i);
            const auto [len, path] = circumference_length(env);
            CHECK(len == doctest::Approx(circumference_bruteforce(env)).epsilon(1e-12));
            // Witness invariants.
            double wlen = 0.0;
            for (EdgeId e : path.edges) wlen += env.weight(e);
            CHECK(wlen == doctest::Approx(len).epsilon(1e-12));
            CHECK(path.winding == 1);
            CHECK(static_cast<double>(path.edges.size()) <= 2.0 * g.layers() / 1.0);
        }
    }
}

TEST_CASE("window stability: doubling K never changes the length") {
    const WeightedGraph g = build_torus_product(FiberGraph::cycle(3), 4);
    for (int i = 0; i < 30; ++i) {
        const Environment env = sample_environment(g, 1.0, 2.0, 23, i);
        CHECK(circumference_length(env, 1).first == circumference_length(env, 2).first);
    }
}

TEST_CASE("bounds a n <= c_G <= b n") {
    const WeightedGraph g = build_torus_product(FiberGraph::cycle(4), 5);
    for (int i = 0; i < 50; ++i) {
        const Environment env = sample_environment(g, 1.0, 2.0, 29, i);
        const double c = circumference_length(env).first;
        CHECK(c >= 5.0);
        CHECK(c <= 10.0);
    }
}

TEST_CASE("negative derivative implies membership in the witness, exhaustively") {
    const WeightedGraph g = build_torus_product(FiberGraph::complete(2), 3);
    REQUIRE(g.edge_count() == 9);
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
        const Environment env = env_with_bits(g, 1.0, 2.0, mask);
        const auto [len, beta] = circumference_length(env);
        CHECK(beta.edges.size() <= 6);  // |beta| <= b n / a
        for (EdgeId e = 0; e < 9; ++e) {
            const double rho = circumference_derivative(env, e);
            CHECK(std::abs(rho) <= 0.5 + 1e-12);
            if (rho < 0.0)
                CHECK(std::count(beta.edges.begin(), beta.edges.end(), e) >= 1);
        }
    }
}

TEST_CASE("sum of negative-derivative probabilities stays below b n / a") {
    // Monte Carlo version of the pivotal-edge count bound on a 6x6 torus.
    const WeightedGraph g = build_torus_product(FiberGraph::cycle(6), 6);
    const int n_samples = 120;
    double neg_edges_sum = 0.0, neg_edges_sumsq = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const Environment env = sample_environment(g, 1.0, 2.0, 31, i);
        const double c0 = circumference_length(env).first;
        int neg = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const double rho = (c0 - circumference_length(env.toggled(e)).first) / 2.0;
            if (rho < 0.0) ++neg;
        }
        neg_edges_sum += neg;
        neg_edges_sumsq += static_cast<double>(neg) * neg;
    }
    const double mean = neg_edges_sum / n_samples;
    const double var = (neg_edges_sumsq - neg_edges_sum * mean) / (n_samples - 1);
    const double se = std::sqrt(var / n_samples);
    CHECK(mean <= 12.0 + 4.0 * se);  // b n / a = 12
}

TEST_CASE("circumference is invariant under layer rotation of the weights") {
    // Rotating every weight one step along the Z/nZ factor is a graph
    // automorphism, so the minimum length cannot change (the witness may).
    const WeightedGraph g = build_torus_product(FiberGraph::cycle(4), 4);
    for (int i = 0; i < 40; ++i) {
        const Environment env = sample_environment(g, 1.0, 2.0, 37, i);
        Environment rotated = env;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            const int hu = g.fiber_of(ed.u), tu = g.layer_of(ed.u);
            const int hv = g.fiber_of(ed.v), tv = g.layer_of(ed.v);
            const VertexId ru = g.torus_vertex(hu, (tu + 1) % 4);
            const VertexId rv = g.torus_vertex(hv, (tv + 1) % 4);
            // Find the image edge and copy the original weight onto it.
            for (const auto* a = g.arcs_begin(std::min(ru, rv)); a != g.arcs_end(std::min(ru, rv));
                 ++a) {
                if (a->to == std::max(ru, rv)) {
                    if (rotated.bit(a->edge) != env.bit(e)) rotated = toggle_edge(rotated, a->edge);
                    break;
                }
            }
        }
        CHECK(circumference_length(rotated).first ==
              doctest::Approx(circumference_length(env).first));
    }
}

TEST_CASE("non-torus graphs are rejected") {
    const WeightedGraph g = build_box(2, {3, 3});
    const Environment env = sample_environment(g, 1.0, 2.0, 0, 0);
    CHECK_THROWS_AS(circumference_length(env), std::invalid_argument);
    CHECK_THROWS_AS(circumference_bruteforce(env), std::invalid_argument);
}

TEST_CASE("brute force rejects large instances") {
    const WeightedGraph g = build_torus_product(FiberGraph::cycle(5), 4);
    const Environment env = sample_environment(g, 1.0, 2.0, 0, 0);
    CHECK_THROWS_AS(circumference_bruteforce(env), std::invalid_argument);
}
