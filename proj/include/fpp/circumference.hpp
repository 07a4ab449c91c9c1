#pragma once

#include <utility>
#include <vector>

#include "fpp/environment.hpp"
#include "fpp/graph.hpp"

namespace fpp {

// Closed path in a torus product whose projection onto Z/nZ has degree 1.
struct CircumferencePath {
    std::vector<EdgeId> edges;  // ordered traversal
    int winding;
    double length;
};

// Minimal omega-length circumference c_G(omega) with a deterministic witness.
// The graph is unrolled to the strip H x {-K, ..., n+K} with
// K = window_scale * ceil(b*n/a); a shortest-path search runs from (h, 0)
// to (h, n) for every fiber vertex h and the minimum is taken (smallest h
// wins ties). window_scale > 1 exists for window-stability checks.
std::pair<double, CircumferencePath> circumference_length(const Environment& env,
                                                          int window_scale = 1);

// Exhaustive minimum over simple cycles with |winding| = 1; instances are
// capped at 16 vertices.
double circumference_bruteforce(const Environment& env);

// (c_G(omega) - c_G(sigma_e omega)) / 2.
double circumference_derivative(const Environment& env, EdgeId e);

}  // namespace fpp
