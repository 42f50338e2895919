#pragma once

#include <vector>

#include "ust/multigraph.hpp"
#include "ust/rng.hpp"

namespace ust {

// One lazy-free step of the natural random walk: each incident edge
// (counted with multiplicity) is taken with probability 1/deg.
inline Incidence walk_step(const Multigraph& g, int v, Rng& rng) {
    const auto& inc = g.incident(v);
    ensure(!inc.empty(), "walk stranded on an isolated vertex");
    return inc[rng.index(static_cast<int>(inc.size()))];
}

struct WalkStats {
    long long steps = 0;
    long long cover_steps = 0;  // step count when the last vertex was first reached
};

// First-visit edges of a walk run until every vertex is seen form a
// uniform spanning tree.
inline EdgeSet aldous_broder(const Multigraph& g, Rng& rng, int start = 0,
                             WalkStats* stats = nullptr) {
    int n = g.vertex_count();
    ensure(start >= 0 && start < n, "start vertex out of range");
    std::vector<char> visited(n, 0);
    std::vector<int> tree;
    tree.reserve(n > 0 ? n - 1 : 0);
    visited[start] = 1;
    int remaining = n - 1;
    int v = start;
    long long steps = 0;
    while (remaining > 0) {
        Incidence inc = walk_step(g, v, rng);
        ++steps;
        if (!visited[inc.to]) {
            visited[inc.to] = 1;
            tree.push_back(inc.edge);
            --remaining;
            if (stats) stats->cover_steps = steps;
        }
        v = inc.to;
    }
    if (stats) stats->steps = steps;
    return EdgeSet(std::move(tree));
}

// Loop-erased walks from each unvisited vertex toward the growing tree.
inline EdgeSet wilson(const Multigraph& g, Rng& rng, int root = 0, long long* steps = nullptr) {
    int n = g.vertex_count();
    ensure(root >= 0 && root < n, "root vertex out of range");
    std::vector<char> in_tree(n, 0);
    std::vector<int> next_edge(n, -1), next_vertex(n, -1);
    in_tree[root] = 1;
    std::vector<int> tree;
    tree.reserve(n > 0 ? n - 1 : 0);
    for (int s = 0; s < n; ++s) {
        if (in_tree[s]) continue;
        int v = s;
        while (!in_tree[v]) {
            Incidence inc = walk_step(g, v, rng);
            if (steps) ++*steps;
            next_edge[v] = inc.edge;
            next_vertex[v] = inc.to;
            v = inc.to;
        }
        v = s;
        while (!in_tree[v]) {
            in_tree[v] = 1;
            tree.push_back(next_edge[v]);
            v = next_vertex[v];
        }
    }
    return EdgeSet(std::move(tree));
}

// Full covering walk from each vertex; used for cover time measurements.
inline long long cover_time_from(const Multigraph& g, int start, Rng& rng) {
    WalkStats st;
    aldous_broder(g, rng, start, &st);
    return st.cover_steps;
}

}  // namespace ust
