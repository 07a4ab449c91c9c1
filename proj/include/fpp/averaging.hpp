#pragma once

#include <cstdint>
#include <vector>

#include "fpp/environment.hpp"
#include "fpp/graph.hpp"
#include "fpp/metric.hpp"
#include "fpp/stats.hpp"

namespace fpp {

// A draw of the auxiliary bit matrix x (d rows of m^2 coins) and the lattice
// shift z it induces: z_i = g_m(row i).
struct ShiftSample {
    int d;
    int m;
    std::vector<std::uint8_t> bits;  // row-major, d * m^2
    std::vector<int> z;              // coordinates in {0, ..., m}

    std::vector<std::uint8_t> row(int i) const {
        return {bits.begin() + static_cast<std::size_t>(i) * m * m,
                bits.begin() + static_cast<std::size_t>(i + 1) * m * m};
    }
};

// Default shift scale floor(|v|^{1/4}), never below 1.
int default_shift_m(int v_l1);

ShiftSample sample_shift(int d, int m, std::uint64_t seed, std::uint64_t sample_index);

// Builds a ShiftSample from explicit bits (tests and exhaustive checks).
ShiftSample make_shift(int d, int m, std::vector<std::uint8_t> bits);

// dist(from + z, to + z) in a box environment; throws if either shifted
// endpoint leaves the box.
double shifted_distance(const ShiftSample& shift, const Environment& env,
                        const std::vector<int>& from, const std::vector<int>& to);

struct InfluenceEstimate {
    EstimatorSummary influence;   // Bernoulli: sigma_e f-tilde != f-tilde
    EstimatorSummary membership;  // Bernoulli: e on the shifted geodesic witness
};

// Monte Carlo estimate of I_e(f-tilde) by explicit toggling, together with
// the geodesic-membership surrogate read off the same samples.
InfluenceEstimate influence_estimate(EdgeId e, const WeightedGraph& box, double a, double b,
                                     const std::vector<int>& origin,
                                     const std::vector<int>& v_offset, int m,
                                     std::uint64_t seed, int n_samples);

}  // namespace fpp
