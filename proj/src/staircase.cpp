#include "fpp/staircase.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fpp {

int staircase_k(int m, std::uint64_t j) {
    if (m < 1) throw std::invalid_argument("staircase_k: m must be >= 1");
    const std::uint64_t r = j % (2ull * m);
    return r <= static_cast<std::uint64_t>(m) ? static_cast<int>(r)
                                              : static_cast<int>(2ull * m - r);
}

int staircase_g(const std::vector<std::uint8_t>& bits, int m) {
    if (m < 1) throw std::invalid_argument("staircase_g: m must be >= 1");
    if (bits.size() != static_cast<std::size_t>(m) * m)
        throw std::invalid_argument("staircase_g: input must have exactly m^2 bits");
    std::uint64_t weight = 0;
    for (std::uint8_t b : bits) weight += (b != 0);
    return staircase_k(m, weight);
}

LevelDistribution exact_level_distribution(int m) {
    if (m < 1) throw std::invalid_argument("exact_level_distribution: m must be >= 1");
    const int trials = m * m;
    LevelDistribution out;
    out.p.assign(m + 1, 0.0);
    if (m <= 64) {
        out.exact = true;
        // log C(N, j) - N log 2 in extended precision; far tails underflow
        // to zero, which is below every tolerance used here.
        const long double log2N = trials * std::log(2.0L);
        const long double lgN = std::lgammal(static_cast<long double>(trials) + 1.0L);
        std::vector<long double> acc(m + 1, 0.0L);
        for (int j = 0; j <= trials; ++j) {
            const long double logp = lgN - std::lgammal(j + 1.0L) -
                                     std::lgammal(trials - j + 1.0L) - log2N;
            acc[staircase_k(m, j)] += expl(logp);
        }
        for (int y = 0; y <= m; ++y) out.p[y] = static_cast<double>(acc[y]);
    } else {
        out.exact = false;
        // Normal approximation to the Hamming weight, mass folded through k.
        const double mu = trials / 2.0;
        const double sd = std::sqrt(trials) / 2.0;
        for (int j = 0; j <= trials; ++j) {
            const double lo = (j - 0.5 - mu) / sd;
            const double hi = (j + 0.5 - mu) / sd;
            const double mass = 0.5 * (std::erf(hi / std::sqrt(2.0)) - std::erf(lo / std::sqrt(2.0)));
            out.p[staircase_k(m, j)] += mass;
        }
    }
    return out;
}

}  // namespace fpp
