#pragma once

#include <cstdint>
#include <vector>

#include "fpp/environment.hpp"
#include "fpp/graph.hpp"

namespace fpp {

struct Geodesic {
    VertexId source;
    VertexId target;
    std::vector<EdgeId> edges;  // ordered source -> target
    double length;
};

double distance(const Environment& env, VertexId u, VertexId v);

// Deterministic shortest path: ties between equal-length predecessors are
// broken toward the smallest edge id.
Geodesic geodesic(const Environment& env, VertexId u, VertexId v);

// (f(omega) - f(sigma_e omega)) / 2 for f = dist(u, v).
double discrete_derivative(const Environment& env, EdgeId e, VertexId u, VertexId v);

namespace detail {

// Single-source Dijkstra over an explicit arc list; stops early once
// `target` is settled. pred_arc holds indices into `arcs` (~0u when unset).
struct ShortestPathTree {
    std::vector<double> dist;
    std::vector<std::uint32_t> pred_arc;
};

struct FlatArc {
    std::uint32_t to;
    std::uint32_t edge;  // caller-defined label, used for tie-breaking
    double weight;
};

ShortestPathTree dijkstra(std::size_t n_vertices, const std::vector<std::size_t>& offsets,
                          const std::vector<FlatArc>& arcs, std::uint32_t source,
                          std::uint32_t target);

// Environment-weighted search directly over the graph adjacency; pred_edge
// holds graph edge ids (~0u when unset).
struct EnvTree {
    std::vector<double> dist;
    std::vector<EdgeId> pred_edge;
};

EnvTree dijkstra_env(const Environment& env, VertexId source, VertexId target);

}  // namespace detail

}  // namespace fpp
