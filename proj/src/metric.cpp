#include "fpp/metric.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fpp {
namespace detail {

namespace {
constexpr std::uint32_t kNone = ~0u;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

ShortestPathTree dijkstra(std::size_t n_vertices, const std::vector<std::size_t>& offsets,
                          const std::vector<FlatArc>& arcs, std::uint32_t source,
                          std::uint32_t target) {
    ShortestPathTree t;
    t.dist.assign(n_vertices, kInf);
    t.pred_arc.assign(n_vertices, kNone);
    t.dist[source] = 0.0;

    using Item = std::pair<double, std::uint32_t>;  // vertex id breaks heap ties
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, source});
    std::vector<char> settled(n_vertices, 0);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        if (u == target) break;
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            const FlatArc& a = arcs[i];
            const double nd = d + a.weight;
            if (nd < t.dist[a.to]) {
                t.dist[a.to] = nd;
                t.pred_arc[a.to] = static_cast<std::uint32_t>(i);
                heap.push({nd, a.to});
            } else if (nd == t.dist[a.to] && t.pred_arc[a.to] != kNone &&
                       a.edge < arcs[t.pred_arc[a.to]].edge) {
                // Equal-length predecessor: keep the smallest edge label.
                t.pred_arc[a.to] = static_cast<std::uint32_t>(i);
            }
        }
    }
    return t;
}

EnvTree dijkstra_env(const Environment& env, VertexId source, VertexId target) {
    const WeightedGraph& g = env.graph();
    const std::size_t n = g.vertex_count();
    EnvTree t;
    t.dist.assign(n, kInf);
    t.pred_edge.assign(n, kNone);
    t.dist[source] = 0.0;

    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, source});
    std::vector<char> settled(n, 0);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        if (u == target) break;
        for (const auto* a = g.arcs_begin(u); a != g.arcs_end(u); ++a) {
            const double nd = d + env.weight(a->edge);
            if (nd < t.dist[a->to]) {
                t.dist[a->to] = nd;
                t.pred_edge[a->to] = a->edge;
                heap.push({nd, a->to});
            } else if (nd == t.dist[a->to] && t.pred_edge[a->to] != kNone &&
                       a->edge < t.pred_edge[a->to]) {
                t.pred_edge[a->to] = a->edge;
            }
        }
    }
    return t;
}

}  // namespace detail

double distance(const Environment& env, VertexId u, VertexId v) {
    const WeightedGraph& g = env.graph();
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw std::out_of_range("distance: vertex id out of range");
    if (u == v) return 0.0;
    const auto tree = detail::dijkstra_env(env, u, v);
    const double d = tree.dist[v];
    if (!(d < std::numeric_limits<double>::infinity()))
        throw std::logic_error("distance: vertices are disconnected");
    return d;
}

Geodesic geodesic(const Environment& env, VertexId u, VertexId v) {
    const WeightedGraph& g = env.graph();
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw std::out_of_range("geodesic: vertex id out of range");
    Geodesic out{u, v, {}, 0.0};
    if (u == v) return out;
    const auto tree = detail::dijkstra_env(env, u, v);
    if (!(tree.dist[v] < std::numeric_limits<double>::infinity()))
        throw std::logic_error("geodesic: vertices are disconnected");
    out.length = tree.dist[v];
    VertexId cur = v;
    while (cur != u) {
        const EdgeId eid = tree.pred_edge[cur];
        out.edges.push_back(eid);
        const Edge& ed = g.edge(eid);
        cur = (ed.u == cur) ? ed.v : ed.u;
    }
    std::reverse(out.edges.begin(), out.edges.end());
    return out;
}

double discrete_derivative(const Environment& env, EdgeId e, VertexId u, VertexId v) {
    if (e >= env.graph().edge_count())
        throw std::out_of_range("discrete_derivative: invalid edge id");
    return (distance(env, u, v) - distance(env.toggled(e), u, v)) / 2.0;
}

}  // namespace fpp
