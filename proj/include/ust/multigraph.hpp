#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "ust/common.hpp"
#include "ust/union_find.hpp"

namespace ust {

// Sorted, duplicate-free id collections. Vertices and edges get distinct
// types so sets cannot be mixed up at call sites.
template <class Tag>
struct IdSet {
    std::vector<int> ids;  // sorted ascending, unique

    IdSet() = default;
    explicit IdSet(std::vector<int> raw) : ids(std::move(raw)) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }

    static IdSet of(std::initializer_list<int> xs) { return IdSet(std::vector<int>(xs)); }

    bool contains(int x) const {
        return std::binary_search(ids.begin(), ids.end(), x);
    }
    int size() const { return static_cast<int>(ids.size()); }
    bool empty() const { return ids.empty(); }
    auto begin() const { return ids.begin(); }
    auto end() const { return ids.end(); }
    bool operator==(const IdSet& o) const { return ids == o.ids; }

    IdSet set_union(const IdSet& o) const {
        IdSet r;
        std::set_union(ids.begin(), ids.end(), o.ids.begin(), o.ids.end(),
                       std::back_inserter(r.ids));
        return r;
    }
    IdSet set_difference(const IdSet& o) const {
        IdSet r;
        std::set_difference(ids.begin(), ids.end(), o.ids.begin(), o.ids.end(),
                            std::back_inserter(r.ids));
        return r;
    }
    IdSet set_intersection(const IdSet& o) const {
        IdSet r;
        std::set_intersection(ids.begin(), ids.end(), o.ids.begin(), o.ids.end(),
                              std::back_inserter(r.ids));
        return r;
    }
};

struct VertexTag {};
struct EdgeTag {};
using VertexSet = IdSet<VertexTag>;
using EdgeSet = IdSet<EdgeTag>;

struct Incidence {
    int edge;
    int to;
};

class Multigraph;
struct ConditionResult;

// Undirected multigraph. Parallel edges are first-class; self-loops are
// rejected. Edge ids index a fixed id space that survives conditioning:
// ids of removed edges become tombstones and are never reused, so an edge
// sampled in a conditioned graph still names the original edge.
class Multigraph {
public:
    Multigraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
        ensure(n >= 1, "graph needs at least one vertex");
        edges_.reserve(edges.size());
        for (auto [a, b] : edges) {
            ensure(a >= 0 && a < n && b >= 0 && b < n, "edge endpoint out of range");
            ensure(a != b, "self-loops are not allowed");
            edges_.push_back({a, b, true});
        }
        live_ = static_cast<int>(edges_.size());
        rebuild_adjacency();
    }

    int vertex_count() const { return n_; }
    // Size of the edge id space, including tombstones.
    int edge_id_space() const { return static_cast<int>(edges_.size()); }
    int live_edge_count() const { return live_; }

    bool edge_alive(int e) const { return edges_[e].alive; }
    std::pair<int, int> endpoints(int e) const {
        ensure(edges_[e].alive, "endpoints of a dead edge");
        return {edges_[e].a, edges_[e].b};
    }
    // Endpoint of e that is not v.
    int other_endpoint(int e, int v) const {
        auto [a, b] = endpoints(e);
        ensure(a == v || b == v, "vertex not incident to edge");
        return a == v ? b : a;
    }

    const std::vector<Incidence>& incident(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    std::vector<int> live_edges() const {
        std::vector<int> out;
        out.reserve(live_);
        for (int e = 0; e < edge_id_space(); ++e)
            if (edges_[e].alive) out.push_back(e);
        return out;
    }

    ConditionResult condition(const EdgeSet& f_star, const EdgeSet& f_prime) const;

private:
    struct EdgeRec {
        int a, b;
        bool alive;
    };

    Multigraph() = default;

    void rebuild_adjacency() {
        adj_.assign(n_, {});
        for (int e = 0; e < edge_id_space(); ++e) {
            if (!edges_[e].alive) continue;
            adj_[edges_[e].a].push_back({e, edges_[e].b});
            adj_[edges_[e].b].push_back({e, edges_[e].a});
        }
    }

    int n_ = 0;
    std::vector<EdgeRec> edges_;
    std::vector<std::vector<Incidence>> adj_;
    int live_ = 0;
};

struct ConditionResult {
    Multigraph graph;
    std::vector<int> vertex_map;  // old vertex id -> new vertex id
};

inline std::vector<char> to_flags(const VertexSet& s, int n) {
    std::vector<char> f(n, 0);
    for (int v : s) f[v] = 1;
    return f;
}

// Edges with both endpoints in s.
inline EdgeSet interior(const Multigraph& g, const VertexSet& s) {
    auto in = to_flags(s, g.vertex_count());
    std::vector<int> out;
    for (int e = 0; e < g.edge_id_space(); ++e) {
        if (!g.edge_alive(e)) continue;
        auto [a, b] = g.endpoints(e);
        if (in[a] && in[b]) out.push_back(e);
    }
    return EdgeSet(std::move(out));
}

// Edges with exactly one endpoint in s.
inline EdgeSet boundary(const Multigraph& g, const VertexSet& s) {
    auto in = to_flags(s, g.vertex_count());
    std::vector<int> out;
    for (int e = 0; e < g.edge_id_space(); ++e) {
        if (!g.edge_alive(e)) continue;
        auto [a, b] = g.endpoints(e);
        if (in[a] != in[b]) out.push_back(e);
    }
    return EdgeSet(std::move(out));
}

// Connected components, optionally restricted to the subgraph induced by
// `within`. Components are listed in order of their smallest vertex id.
inline std::vector<VertexSet> connected_components(
    const Multigraph& g, const std::optional<VertexSet>& within = std::nullopt) {
    int n = g.vertex_count();
    std::vector<char> eligible(n, 1);
    if (within) {
        eligible.assign(n, 0);
        for (int v : *within) eligible[v] = 1;
    }
    std::vector<char> seen(n, 0);
    std::vector<VertexSet> comps;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (!eligible[s] || seen[s]) continue;
        std::vector<int> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& inc : g.incident(v)) {
                if (eligible[inc.to] && !seen[inc.to]) {
                    seen[inc.to] = 1;
                    stack.push_back(inc.to);
                }
            }
        }
        comps.push_back(VertexSet(std::move(comp)));
    }
    return comps;
}

inline bool is_connected(const Multigraph& g) {
    return connected_components(g).size() == 1;
}

// BFS distances from src inside the subgraph induced by `within`
// (-1 = unreachable). `within` must contain src.
inline std::vector<int> bfs_distances_within(const Multigraph& g, int src,
                                             const std::optional<VertexSet>& within = std::nullopt) {
    int n = g.vertex_count();
    std::vector<char> eligible(n, 1);
    if (within) {
        eligible.assign(n, 0);
        for (int v : *within) eligible[v] = 1;
    }
    ensure(eligible[src], "BFS source outside the induced subgraph");
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& inc : g.incident(v)) {
            if (eligible[inc.to] && dist[inc.to] < 0) {
                dist[inc.to] = dist[v] + 1;
                q.push(inc.to);
            }
        }
    }
    return dist;
}

// Exact graph diameter of the subgraph induced by s (max over BFS from
// every vertex). Infinite (disconnected) cases report -1.
inline int induced_diameter(const Multigraph& g, const VertexSet& s) {
    int best = 0;
    for (int v : s) {
        auto dist = bfs_distances_within(g, v, s);
        for (int u : s) {
            if (dist[u] < 0) return -1;
            best = std::max(best, dist[u]);
        }
    }
    return best;
}

inline bool is_spanning_tree(const Multigraph& g, const EdgeSet& edges) {
    if (edges.size() != g.vertex_count() - 1) return false;
    UnionFind uf(g.vertex_count());
    for (int e : edges) {
        if (!g.edge_alive(e)) return false;
        auto [a, b] = g.endpoints(e);
        if (!uf.unite(a, b)) return false;
    }
    return uf.components() == 1;
}

// Contracts f_prime, deletes the rest of f_star, and drops self-loops the
// contraction produces. Surviving edges keep their ids.
inline ConditionResult Multigraph::condition(const EdgeSet& f_star,
                                             const EdgeSet& f_prime) const {
    for (int e : f_star) ensure(e >= 0 && e < edge_id_space() && edges_[e].alive,
                                "condition: f_star contains a dead edge id");
    ensure(f_prime.set_difference(f_star).empty(), "condition: f_prime must lie inside f_star");

    UnionFind uf(n_);
    for (int e : f_prime) {
        auto [a, b] = endpoints(e);
        ensure(uf.unite(a, b), "condition: contracted edge set contains a cycle");
    }

    // Compress union-find roots to a dense vertex numbering.
    std::vector<int> vmap(n_, -1);
    int next = 0;
    for (int v = 0; v < n_; ++v) {
        int r = uf.find(v);
        if (vmap[r] < 0) vmap[r] = next++;
    }
    for (int v = 0; v < n_; ++v) vmap[v] = vmap[uf.find(v)];

    Multigraph out;
    out.n_ = next;
    out.edges_.resize(edges_.size());
    out.live_ = 0;
    std::vector<char> in_f_star(edge_id_space(), 0);
    for (int e : f_star) in_f_star[e] = 1;
    for (int e = 0; e < edge_id_space(); ++e) {
        const auto& rec = edges_[e];
        int a = rec.alive ? vmap[rec.a] : -1;
        int b = rec.alive ? vmap[rec.b] : -1;
        bool alive = rec.alive && !in_f_star[e] && a != b;
        out.edges_[e] = {alive ? a : 0, alive ? b : 0, alive};
        if (alive) ++out.live_;
    }
    out.rebuild_adjacency();
    ensure(out.n_ == n_ - f_prime.size(), "condition: vertex count mismatch");
    ensure(is_connected(out), "condition: result is disconnected");
    return {std::move(out), std::move(vmap)};
}

}  // namespace ust
