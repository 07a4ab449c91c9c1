#pragma once

#include <cstdint>
#include <vector>

namespace fpp {

// Triangular wave k: k(0) = 0, increments on j mod 2m in [0, m-1],
// decrements otherwise; period 2m, range {0, ..., m}.
int staircase_k(int m, std::uint64_t j);

// g_m(x) = k(||x||_1) for x in {0,1}^{m^2}.
int staircase_g(const std::vector<std::uint8_t>& bits, int m);

struct LevelDistribution {
    std::vector<double> p;  // P[g = y], y = 0..m
    bool exact;             // false when the normal-approximation fallback was used
};

// Exact P[g_m = y] over uniform x via binomial weights; exact for m <= 64,
// normal approximation (flagged) beyond that.
LevelDistribution exact_level_distribution(int m);

}  // namespace fpp
