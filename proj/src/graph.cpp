#include "fpp/graph.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <set>
#include <stdexcept>

namespace fpp {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

FiberGraph FiberGraph::single_vertex() {
    FiberGraph h;
    h.vertex_count = 1;
    h.transitive_certified = true;
    return h;
}

FiberGraph FiberGraph::cycle(int k) {
    if (k < 3) throw std::invalid_argument("FiberGraph::cycle: k must be >= 3");
    FiberGraph h;
    h.vertex_count = k;
    for (int i = 0; i < k; ++i) h.edges.emplace_back(i, (i + 1) % k);
    h.transitive_certified = true;
    return h;
}

FiberGraph FiberGraph::complete(int k) {
    if (k < 2) throw std::invalid_argument("FiberGraph::complete: k must be >= 2");
    FiberGraph h;
    h.vertex_count = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) h.edges.emplace_back(i, j);
    h.transitive_certified = true;
    return h;
}

FiberGraph FiberGraph::from_spec(const std::string& spec) {
    if (spec == "single") return single_vertex();
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string name = spec.substr(0, colon);
        const int k = std::stoi(spec.substr(colon + 1));
        if (name == "cycle") return cycle(k);
        if (name == "complete") return complete(k);
    }
    throw std::invalid_argument("unknown fiber graph spec: " + spec);
}

void WeightedGraph::finalize_edges(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (const Edge& e : edges) {
        if (e.u >= e.v || e.v >= vertex_count_)
            throw std::logic_error("invalid edge endpoints");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v)
            throw std::logic_error("duplicate edge");
    }
    edges_ = std::move(edges);

    arc_offsets_.assign(vertex_count_ + 1, 0);
    for (const Edge& e : edges_) {
        ++arc_offsets_[e.u + 1];
        ++arc_offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= vertex_count_; ++i) arc_offsets_[i] += arc_offsets_[i - 1];
    arcs_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(arc_offsets_.begin(), arc_offsets_.end() - 1);
    // Edges are scanned in canonical order, so each adjacency list comes out
    // sorted by edge id.
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        arcs_[cursor[edges_[e].u]++] = {e, edges_[e].v};
        arcs_[cursor[edges_[e].v]++] = {e, edges_[e].u};
    }
}

WeightedGraph WeightedGraph::box(int d, const std::vector<int>& sides) {
    if (d < 1) throw std::invalid_argument("build_box: d must be >= 1");
    if (static_cast<int>(sides.size()) != d)
        throw std::invalid_argument("build_box: sides size must equal d");
    for (int s : sides)
        if (s < 2) throw std::invalid_argument("build_box: every side must be >= 2");

    WeightedGraph g;
    g.kind_ = GraphKind::Box;
    g.sides_ = sides;
    g.strides_.assign(d, 1);
    std::size_t count = 1;
    for (int i = d - 1; i >= 0; --i) {
        g.strides_[i] = count;
        count *= static_cast<std::size_t>(sides[i]);
        if (count > std::numeric_limits<VertexId>::max())
            throw std::invalid_argument("build_box: vertex count overflows index type");
    }
    g.vertex_count_ = count;

    std::vector<Edge> edges;
    std::vector<int> c(d, 0);
    for (VertexId v = 0; v < count; ++v) {
        for (int i = 0; i < d; ++i) {
            if (c[i] + 1 < sides[i]) {
                const VertexId w = v + static_cast<VertexId>(g.strides_[i]);
                edges.push_back({v, w, 0});
            }
        }
        for (int i = d - 1; i >= 0; --i) {
            if (++c[i] < sides[i]) break;
            c[i] = 0;
        }
    }
    g.finalize_edges(std::move(edges));
    return g;
}

WeightedGraph WeightedGraph::torus_product(const FiberGraph& h, int n) {
    if (h.vertex_count < 1) throw std::invalid_argument("torus_product: empty fiber graph");
    if (n < 3) throw std::invalid_argument("torus_product: n must be >= 3");
    {
        std::set<std::pair<int, int>> seen;
        for (auto [x, y] : h.edges) {
            if (x == y || x < 0 || y < 0 || x >= h.vertex_count || y >= h.vertex_count)
                throw std::invalid_argument("torus_product: fiber graph must be simple");
            if (!seen.insert({std::min(x, y), std::max(x, y)}).second)
                throw std::invalid_argument("torus_product: duplicate fiber edge");
        }
    }
    if (!h.transitive_certified)
        std::cerr << "warning: fiber graph carries no vertex-transitivity certificate; "
                     "the circumference variance bound assumes a vertex-transitive H\n";

    WeightedGraph g;
    g.kind_ = GraphKind::TorusProduct;
    g.fiber_ = h;
    g.layers_ = n;
    g.vertex_count_ = static_cast<std::size_t>(n) * h.vertex_count;
    if (g.vertex_count_ > std::numeric_limits<VertexId>::max())
        throw std::invalid_argument("torus_product: vertex count overflows index type");

    std::vector<Edge> edges;
    for (int t = 0; t < n; ++t) {
        for (auto [x, y] : h.edges) {
            VertexId a = g.torus_vertex(std::min(x, y), t);
            VertexId b = g.torus_vertex(std::max(x, y), t);
            edges.push_back({a, b, 0});
        }
        for (int hh = 0; hh < h.vertex_count; ++hh) {
            VertexId a = g.torus_vertex(hh, t);
            VertexId b = g.torus_vertex(hh, (t + 1) % n);
            // Winding is recorded for the u -> v traversal with u < v; the
            // wrap edge (n-1 -> 0) therefore carries -1.
            if (a < b)
                edges.push_back({a, b, +1});
            else
                edges.push_back({b, a, -1});
        }
    }
    g.finalize_edges(std::move(edges));
    return g;
}

std::vector<int> WeightedGraph::coords(VertexId v) const {
    std::vector<int> c(sides_.size());
    std::size_t rem = v;
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        c[i] = static_cast<int>(rem / strides_[i]);
        rem %= strides_[i];
    }
    return c;
}

bool WeightedGraph::contains(const std::vector<int>& c) const {
    if (c.size() != sides_.size()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] < 0 || c[i] >= sides_[i]) return false;
    return true;
}

VertexId WeightedGraph::vertex_at(const std::vector<int>& c) const {
    if (!contains(c)) throw std::out_of_range("vertex_at: coordinates outside box");
    std::size_t v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v += strides_[i] * static_cast<std::size_t>(c[i]);
    return static_cast<VertexId>(v);
}

bool WeightedGraph::on_boundary(VertexId v) const {
    const std::vector<int> c = coords(v);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] == 0 || c[i] == sides_[i] - 1) return true;
    return false;
}

nlohmann::json WeightedGraph::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    if (kind_ == GraphKind::Box) {
        j["kind"] = "box";
        j["sides"] = sides_;
    } else {
        j["kind"] = "torus_product";
        j["n"] = layers_;
        j["fiber_vertices"] = fiber_.vertex_count;
        j["fiber_edges"] = fiber_.edges;
        j["transitive_certified"] = fiber_.transitive_certified;
    }
    nlohmann::json adj = nlohmann::json::array();
    for (const Edge& e : edges_) adj.push_back({e.u, e.v, static_cast<int>(e.winding)});
    j["adjacency"] = adj;
    return j;
}

WeightedGraph WeightedGraph::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != 1)
        throw std::invalid_argument("unsupported graph schema version");
    const std::string kind = j.at("kind").get<std::string>();
    WeightedGraph g;
    if (kind == "box") {
        const auto sides = j.at("sides").get<std::vector<int>>();
        g = box(static_cast<int>(sides.size()), sides);
    } else if (kind == "torus_product") {
        FiberGraph h;
        h.vertex_count = j.at("fiber_vertices").get<int>();
        h.edges = j.at("fiber_edges").get<std::vector<std::pair<int, int>>>();
        h.transitive_certified = j.at("transitive_certified").get<bool>();
        g = torus_product(h, j.at("n").get<int>());
    } else {
        throw std::invalid_argument("unknown graph kind: " + kind);
    }
    if (j.contains("adjacency")) {
        const auto& adj = j.at("adjacency");
        if (adj.size() != g.edge_count())
            throw std::invalid_argument("graph adjacency does not match parameters");
    }
    return g;
}

std::uint64_t WeightedGraph::content_hash() const { return fnv1a(to_json().dump()); }

}  // namespace fpp
