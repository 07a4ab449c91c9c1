#include <doctest.h>

#include <random>

#include "fpp/stats.hpp"

using namespace fpp;

TEST_CASE("basic moments") {
    EstimatorSummary s;
    for (double x : {1.0, 2.0, 3.0, 4.0}) s.add(x);
    CHECK(s.count() == 4);
    CHECK(s.mean() == doctest::Approx(2.5));
    CHECK(s.variance() == doctest::Approx(5.0 / 3.0));
    CHECK(s.min() == 1.0);
    CHECK(s.max() == 4.0);
    CHECK(s.half_width() > 0.0);
}

TEST_CASE("empty and singleton summaries") {
    EstimatorSummary s;
    CHECK(s.count() == 0);
    CHECK_THROWS_AS(s.mean(), std::logic_error);
    s.add(7.0);
    CHECK(s.variance() == 0.0);
}

TEST_CASE("merge reproduces the concatenated stream exactly on integers") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coin(1, 2);
    EstimatorSummary whole, left, right;
    for (int i = 0; i < 1000; ++i) {
        const double x = coin(rng);
        whole.add(x);
        (i < 400 ? left : right).add(x);
        whole.note_sample_index(i);
        (i < 400 ? left : right).note_sample_index(i);
    }
    EstimatorSummary merged = left;
    merged.merge(right);
    CHECK(merged.count() == whole.count());
    CHECK(merged.sum() == whole.sum());
    CHECK(merged.sum_squares() == whole.sum_squares());
    CHECK(merged.min() == whole.min());
    CHECK(merged.max() == whole.max());
    CHECK(merged.first_index() == 0);
    CHECK(merged.last_index() == 999);
    // Integer accumulators make the merge order-independent, bit for bit.
    EstimatorSummary swapped = right;
    swapped.merge(left);
    CHECK(swapped.sum() == merged.sum());
    CHECK(swapped.sum_squares() == merged.sum_squares());
}

TEST_CASE("merge is associative on integer streams") {
    EstimatorSummary a, b, c;
    for (int i = 0; i < 30; ++i) a.add(1 + (i % 2));
    for (int i = 0; i < 50; ++i) b.add(2);
    for (int i = 0; i < 20; ++i) c.add(1);
    EstimatorSummary ab = a;
    ab.merge(b);
    ab.merge(c);
    EstimatorSummary bc = b;
    bc.merge(c);
    EstimatorSummary a_bc = a;
    a_bc.merge(bc);
    CHECK(ab.sum() == a_bc.sum());
    CHECK(ab.sum_squares() == a_bc.sum_squares());
    CHECK(ab.count() == a_bc.count());
}

TEST_CASE("from_raw round trip") {
    EstimatorSummary s;
    s.add(3.0);
    s.add(5.0);
    s.note_sample_index(10);
    s.note_sample_index(20);
    const EstimatorSummary r = EstimatorSummary::from_raw(
        s.count(), s.sum(), s.sum_squares(), s.min(), s.max(), s.first_index(), s.last_index());
    CHECK(r.mean() == s.mean());
    CHECK(r.variance() == s.variance());
    CHECK(r.first_index() == 10);
    CHECK(r.last_index() == 20);
}
