#include "fpp/circumference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpp/metric.hpp"

namespace fpp {

namespace {

struct StripIndex {
    int n;
    int vh;
    int window;  // K
    int layer_count() const { return n + 2 * window + 1; }
    std::size_t vertex_count() const {
        return static_cast<std::size_t>(layer_count()) * vh;
    }
    std::uint32_t vertex(int h, int layer_index) const {
        return static_cast<std::uint32_t>(layer_index) * vh + h;
    }
};

int positive_mod(int x, int n) { return ((x % n) + n) % n; }

}  // namespace

std::pair<double, CircumferencePath> circumference_length(const Environment& env,
                                                          int window_scale) {
    const WeightedGraph& g = env.graph();
    if (g.kind() != GraphKind::TorusProduct)
        throw std::invalid_argument("circumference_length: graph is not a torus product");
    const int n = g.layers();
    const int vh = g.fiber().vertex_count;
    const int window =
        window_scale * static_cast<int>(std::ceil(env.b() * n / env.a()));

    // Classify G edges by layer for the strip lift.
    std::vector<std::vector<EdgeId>> cycle_eid(n, std::vector<EdgeId>(vh, 0));
    std::vector<std::vector<std::pair<std::pair<int, int>, EdgeId>>> fiber_eid(n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.winding == 0) {
            const int t = g.layer_of(ed.u);
            fiber_eid[t].push_back({{g.fiber_of(ed.u), g.fiber_of(ed.v)}, e});
        } else {
            // Base layer t such that the edge joins layers t and t+1 mod n.
            const int t = (ed.winding > 0) ? g.layer_of(ed.u) : n - 1;
            cycle_eid[t][g.fiber_of(ed.u)] = e;
        }
    }

    const StripIndex strip{n, vh, window};
    const int layer_count = strip.layer_count();
    std::vector<std::vector<detail::FlatArc>> adj(strip.vertex_count());
    for (int li = 0; li < layer_count; ++li) {
        const int t = positive_mod(li - window, n);
        for (const auto& [hh, e] : fiber_eid[t]) {
            const std::uint32_t a = strip.vertex(hh.first, li);
            const std::uint32_t b = strip.vertex(hh.second, li);
            const double w = env.weight(e);
            adj[a].push_back({b, e, w});
            adj[b].push_back({a, e, w});
        }
        if (li + 1 < layer_count) {
            for (int h = 0; h < vh; ++h) {
                const EdgeId e = cycle_eid[t][h];
                const std::uint32_t a = strip.vertex(h, li);
                const std::uint32_t b = strip.vertex(h, li + 1);
                const double w = env.weight(e);
                adj[a].push_back({b, e, w});
                adj[b].push_back({a, e, w});
            }
        }
    }
    std::vector<std::size_t> offsets(strip.vertex_count() + 1, 0);
    std::vector<detail::FlatArc> arcs;
    for (std::size_t v = 0; v < strip.vertex_count(); ++v) {
        offsets[v] = arcs.size();
        arcs.insert(arcs.end(), adj[v].begin(), adj[v].end());
    }
    offsets[strip.vertex_count()] = arcs.size();

    double best = std::numeric_limits<double>::infinity();
    int best_h = -1;
    detail::ShortestPathTree best_tree;
    for (int h = 0; h < vh; ++h) {
        const std::uint32_t src = strip.vertex(h, window);
        const std::uint32_t dst = strip.vertex(h, window + n);
        auto tree = detail::dijkstra(strip.vertex_count(), offsets, arcs, src, dst);
        if (tree.dist[dst] < best) {
            best = tree.dist[dst];
            best_h = h;
            best_tree = std::move(tree);
        }
    }
    if (best_h < 0 || !(best < std::numeric_limits<double>::infinity()))
        throw std::logic_error("circumference_length: no degree-1 path found");

    CircumferencePath path;
    path.length = best;
    std::uint32_t cur = strip.vertex(best_h, window + n);
    const std::uint32_t src = strip.vertex(best_h, window);
    while (cur != src) {
        const std::uint32_t arc = best_tree.pred_arc[cur];
        path.edges.push_back(arcs[arc].edge);
        // Step back: find the strip predecessor of cur along this arc.
        // pred_arc indices point into the outgoing list of the predecessor,
        // so locate it by scanning offsets.
        const auto it = std::upper_bound(offsets.begin(), offsets.end(), arc);
        cur = static_cast<std::uint32_t>(it - offsets.begin() - 1);
    }
    std::reverse(path.edges.begin(), path.edges.end());

    // Winding degree from an actual traversal of the projected closed path.
    int total = 0;
    VertexId cur_g = g.torus_vertex(best_h, 0);
    for (EdgeId e : path.edges) {
        total += g.winding_from(e, cur_g);
        const Edge& ed = g.edge(e);
        cur_g = (ed.u == cur_g) ? ed.v : ed.u;
    }
    if (cur_g != g.torus_vertex(best_h, 0) || total != n)
        throw std::logic_error("circumference_length: witness projection is not degree 1");
    path.winding = total / n;
    return {best, path};
}

double circumference_bruteforce(const Environment& env) {
    const WeightedGraph& g = env.graph();
    if (g.kind() != GraphKind::TorusProduct)
        throw std::invalid_argument("circumference_bruteforce: graph is not a torus product");
    if (g.vertex_count() > 16)
        throw std::invalid_argument("circumference_bruteforce: instance too large (> 16 vertices)");
    const int n = g.layers();

    double best = std::numeric_limits<double>::infinity();
    std::vector<char> visited(g.vertex_count(), 0);

    // Enumerate simple cycles whose minimal vertex is the DFS root.
    auto dfs = [&](auto&& self, VertexId root, VertexId cur, EdgeId first_edge, int edge_count,
                   int winding, double length) -> void {
        if (length >= best) return;
        for (const auto* a = g.arcs_begin(cur); a != g.arcs_end(cur); ++a) {
            const int w = g.winding_from(a->edge, cur);
            if (a->to == root) {
                if (edge_count >= 2 && a->edge != first_edge &&
                    std::abs(winding + w) == n) {
                    best = std::min(best, length + env.weight(a->edge));
                }
                continue;
            }
            if (a->to < root || visited[a->to]) continue;
            visited[a->to] = 1;
            self(self, root, a->to, first_edge, edge_count + 1, winding + w,
                 length + env.weight(a->edge));
            visited[a->to] = 0;
        }
    };

    for (VertexId root = 0; root < g.vertex_count(); ++root) {
        visited[root] = 1;
        for (const auto* a = g.arcs_begin(root); a != g.arcs_end(root); ++a) {
            if (a->to < root) continue;
            visited[a->to] = 1;
            dfs(dfs, root, a->to, a->edge, 1, g.winding_from(a->edge, root),
                env.weight(a->edge));
            visited[a->to] = 0;
        }
        visited[root] = 0;
    }
    if (!(best < std::numeric_limits<double>::infinity()))
        throw std::logic_error("circumference_bruteforce: no winding-1 cycle found");
    return best;
}

double circumference_derivative(const Environment& env, EdgeId e) {
    if (e >= env.graph().edge_count())
        throw std::out_of_range("circumference_derivative: invalid edge id");
    const double c0 = circumference_length(env).first;
    const double c1 = circumference_length(env.toggled(e)).first;
    return (c0 - c1) / 2.0;
}

}  // namespace fpp
