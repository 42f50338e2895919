#pragma once

#include <queue>
#include <vector>

#include "ust/multigraph.hpp"

namespace ust {

struct MinCutResult {
    long long value = 0;
    EdgeSet cut_edges;               // original edge ids crossing the cut
    std::vector<char> source_side;   // per original vertex
};

// Exact minimum edge cut separating U from W (unit capacities, parallel
// edges counted individually): contract U and W, run blocking-flow
// augmentation, and read the cut off residual reachability. The returned
// ids name edges of g, so the cut can be applied upstream directly.
inline MinCutResult min_cut_between(const Multigraph& g, const VertexSet& u_side,
                                    const VertexSet& w_side) {
    ensure(!u_side.empty() && !w_side.empty(), "min cut needs nonempty sides");
    ensure(u_side.set_intersection(w_side).empty(), "min cut sides must be disjoint");

    int n = g.vertex_count();
    std::vector<int> node(n, -1);
    for (int v : u_side) node[v] = 0;
    for (int v : w_side) node[v] = 1;
    int next = 2;
    for (int v = 0; v < n; ++v)
        if (node[v] < 0) node[v] = next++;

    struct Arc {
        int to;
        int cap;
        int orig_edge;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj(next);
    auto add_pair = [&](int a, int b, int orig) {
        adj[a].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({b, 1, orig});
        adj[b].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({a, 1, orig});  // undirected: unit capacity both ways
    };
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        int ca = node[a], cb = node[b];
        if (ca == cb) continue;  // internal to a contracted side (or same vertex)
        add_pair(ca, cb, e);
    }

    const int S = 0, T = 1;
    std::vector<int> level(next), it(next);
    auto bfs = [&]() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[S] = 0;
        q.push(S);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj[v]) {
                const Arc& a = arcs[id];
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[v] + 1;
                    q.push(a.to);
                }
            }
        }
        return level[T] >= 0;
    };
    auto dfs = [&](auto&& self, int v, int pushed) -> int {
        if (v == T) return pushed;
        for (int& i = it[v]; i < static_cast<int>(adj[v].size()); ++i) {
            int id = adj[v][i];
            Arc& a = arcs[id];
            if (a.cap > 0 && level[a.to] == level[v] + 1) {
                int got = self(self, a.to, std::min(pushed, a.cap));
                if (got > 0) {
                    a.cap -= got;
                    arcs[id ^ 1].cap += got;
                    return got;
                }
            }
        }
        return 0;
    };

    MinCutResult res;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        while (int f = dfs(dfs, S, 1 << 30)) res.value += f;
    }

    std::vector<char> reach(next, 0);
    {
        std::queue<int> q;
        reach[S] = 1;
        q.push(S);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj[v]) {
                const Arc& a = arcs[id];
                if (a.cap > 0 && !reach[a.to]) {
                    reach[a.to] = 1;
                    q.push(a.to);
                }
            }
        }
    }
    res.source_side.assign(n, 0);
    for (int v = 0; v < n; ++v) res.source_side[v] = reach[node[v]];
    std::vector<int> cut;
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        if (res.source_side[a] != res.source_side[b]) cut.push_back(e);
    }
    res.cut_edges = EdgeSet(std::move(cut));
    ensure(static_cast<long long>(res.cut_edges.size()) == res.value,
           "min cut extraction mismatch");
    return res;
}

}  // namespace ust
