#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fpp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Unordered edge stored with u < v. `winding` is the displacement along the
// Z/nZ factor when traversing u -> v (always 0 for box graphs).
struct Edge {
    VertexId u;
    VertexId v;
    std::int8_t winding;
};

// Small explicit graph used as the fiber H of a torus product.
struct FiberGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    // Caller's assertion that H is vertex-transitive; a missing certificate
    // only triggers a warning, never an error.
    bool transitive_certified = false;

    static FiberGraph single_vertex();
    static FiberGraph cycle(int k);
    static FiberGraph complete(int k);
    static FiberGraph from_spec(const std::string& spec);  // "single" | "cycle:k" | "complete:k"
};

enum class GraphKind { Box, TorusProduct };

class WeightedGraph {
  public:
    static WeightedGraph box(int d, const std::vector<int>& sides);
    static WeightedGraph torus_product(const FiberGraph& h, int n);

    GraphKind kind() const { return kind_; }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    // Neighbors of v as (edge id, other endpoint), sorted by edge id.
    struct Arc {
        EdgeId edge;
        VertexId to;
    };
    const Arc* arcs_begin(VertexId v) const { return arcs_.data() + arc_offsets_[v]; }
    const Arc* arcs_end(VertexId v) const { return arcs_.data() + arc_offsets_[v + 1]; }
    std::size_t degree(VertexId v) const { return arc_offsets_[v + 1] - arc_offsets_[v]; }

    // Signed winding increment of edge e when traversed leaving `from`.
    int winding_from(EdgeId e, VertexId from) const {
        const Edge& ed = edges_[e];
        return from == ed.u ? ed.winding : -ed.winding;
    }

    // Box accessors.
    int dimension() const { return static_cast<int>(sides_.size()); }
    const std::vector<int>& sides() const { return sides_; }
    std::vector<int> coords(VertexId v) const;
    bool contains(const std::vector<int>& c) const;
    VertexId vertex_at(const std::vector<int>& c) const;  // throws if outside
    bool on_boundary(VertexId v) const;

    // Torus-product accessors.
    int layers() const { return layers_; }
    const FiberGraph& fiber() const { return fiber_; }
    int fiber_of(VertexId v) const { return static_cast<int>(v % fiber_.vertex_count); }
    int layer_of(VertexId v) const { return static_cast<int>(v / fiber_.vertex_count); }
    VertexId torus_vertex(int h, int t) const {
        return static_cast<VertexId>(t) * static_cast<VertexId>(fiber_.vertex_count) +
               static_cast<VertexId>(h);
    }

    nlohmann::json to_json() const;
    static WeightedGraph from_json(const nlohmann::json& j);
    std::uint64_t content_hash() const;

  private:
    WeightedGraph() = default;
    void finalize_edges(std::vector<Edge> edges);

    GraphKind kind_ = GraphKind::Box;
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> arc_offsets_;
    std::vector<Arc> arcs_;

    std::vector<int> sides_;        // box only
    std::vector<std::size_t> strides_;  // box only
    FiberGraph fiber_;              // torus only
    int layers_ = 0;                // torus only
};

inline WeightedGraph build_box(int d, const std::vector<int>& sides) {
    return WeightedGraph::box(d, sides);
}
inline WeightedGraph build_torus_product(const FiberGraph& h, int n) {
    return WeightedGraph::torus_product(h, n);
}

// FNV-1a over a byte string; used for config and graph hashes.
std::uint64_t fnv1a(const std::string& s);

}  // namespace fpp
