#pragma once

#include <utility>
#include <vector>

#include "ust/multigraph.hpp"
#include "ust/rng.hpp"

namespace ust {

inline Multigraph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Multigraph(n, e);
}

inline Multigraph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Multigraph(n, e);
}

inline Multigraph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Multigraph(n, e);
}

inline Multigraph complete_graph_minus_edge(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(i == 0 && j == 1)) e.emplace_back(i, j);
    return Multigraph(n, e);
}

inline Multigraph grid_graph(int rows, int cols) {
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return Multigraph(rows * cols, e);
}

// Two triangles {0,1,2} and {3,4,5} joined by the bridge (2,3).
inline Multigraph two_triangles_bridge() {
    return Multigraph(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
}

// Path 0-1-2-3-4 with a triangle {5,6,7} hanging off vertex 0 via (0,5).
// 8 vertices, 8 edges.
inline Multigraph path_with_pendant_triangle() {
    return Multigraph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {5, 6}, {6, 7}, {5, 7}});
}

// Uniform random spanning tree-free construction: a random spanning tree
// (to guarantee connectivity) plus m - (n-1) random extra edges. Simple
// unless allow_parallel is set.
inline Multigraph random_connected_graph(int n, int m, Rng& rng, bool allow_parallel = false) {
    ensure(m >= n - 1, "too few edges for a connected graph");
    std::vector<std::pair<int, int>> e;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
    for (int i = 1; i < n; ++i) e.emplace_back(order[rng.index(i)], order[i]);
    std::vector<char> used;
    if (!allow_parallel) {
        used.assign(static_cast<std::size_t>(n) * n, 0);
        for (auto [a, b] : e) used[static_cast<std::size_t>(std::min(a, b)) * n + std::max(a, b)] = 1;
    }
    int guard = 0;
    while (static_cast<int>(e.size()) < m) {
        int a = rng.index(n), b = rng.index(n);
        if (a == b) continue;
        if (!allow_parallel) {
            auto key = static_cast<std::size_t>(std::min(a, b)) * n + std::max(a, b);
            if (used[key]) {
                ensure(++guard < 100 * m + 1000, "random graph generation stalled");
                continue;
            }
            used[key] = 1;
        }
        e.emplace_back(a, b);
    }
    return Multigraph(n, e);
}

// Random d-regular multigraph by the pairing model, resampled until it is
// simple-enough (no self-loops) and connected.
inline Multigraph random_regular_multigraph(int n, int d, Rng& rng) {
    ensure(n * d % 2 == 0, "n*d must be even");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(n * d);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);
        for (int i = static_cast<int>(stubs.size()) - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.index(i + 1)]);
        std::vector<std::pair<int, int>> e;
        bool ok = true;
        for (std::size_t i = 0; i < stubs.size(); i += 2) {
            if (stubs[i] == stubs[i + 1]) {
                ok = false;
                break;
            }
            e.emplace_back(stubs[i], stubs[i + 1]);
        }
        if (!ok) continue;
        Multigraph g(n, e);
        if (is_connected(g)) return g;
    }
    ensure(false, "could not generate a connected regular multigraph");
    throw ContractViolation("unreachable");
}

struct Dumbbell {
    Multigraph graph;
    VertexSet left_block;   // first expander
    VertexSet right_block;  // second expander
    int paths;
    int path_length;
};

// Two 3-regular expanders of ~n/2 vertices each, joined by floor(sqrt(n))
// vertex-disjoint paths of length floor(sqrt(n)). Path interiors get fresh
// vertex ids above the expander blocks.
inline Dumbbell dumbbell_graph(int n, Rng& rng) {
    int half = n / 2;
    if (half % 2 == 1) ++half;  // 3-regular needs an even vertex count
    ensure(half >= 4, "dumbbell too small");
    int p = 1;
    while ((p + 1) * (p + 1) <= n) ++p;  // floor(sqrt(n))
    int len = p;
    ensure(p <= half, "more paths than expander vertices");

    Rng r1 = rng.derive("dumbbell-left");
    Rng r2 = rng.derive("dumbbell-right");
    Multigraph g1 = random_regular_multigraph(half, 3, r1);
    Multigraph g2 = random_regular_multigraph(half, 3, r2);

    std::vector<std::pair<int, int>> e;
    for (int eid : g1.live_edges()) {
        auto [a, b] = g1.endpoints(eid);
        e.emplace_back(a, b);
    }
    for (int eid : g2.live_edges()) {
        auto [a, b] = g2.endpoints(eid);
        e.emplace_back(half + a, half + b);
    }
    int next = 2 * half;
    for (int i = 0; i < p; ++i) {
        int from = i;          // distinct attachment in g1
        int to = half + i;     // distinct attachment in g2
        int prev = from;
        for (int s = 0; s + 1 < len; ++s) {
            e.emplace_back(prev, next);
            prev = next++;
        }
        e.emplace_back(prev, to);
    }

    std::vector<int> left, right;
    for (int v = 0; v < half; ++v) left.push_back(v);
    for (int v = half; v < 2 * half; ++v) right.push_back(v);
    return {Multigraph(next, e), VertexSet(std::move(left)), VertexSet(std::move(right)), p, len};
}

struct FarPairFixture {
    Multigraph graph;
    VertexSet left_block;
    VertexSet right_block;
    std::vector<int> bridge_paths_first_vertex;  // one entry per bridge path
};

// Two dense blocks joined by a few long paths: resistance between the
// blocks ~ path_length/path_count while every block stays internally
// tight. Sized so the blocks are "large" (interior above m^{2/3}) and far
// apart in resistance relative to m^{1/3}.
inline FarPairFixture far_pair_fixture(int block_n, int block_m, int path_count, int path_len,
                                       Rng& rng) {
    Rng rl = rng.derive("far-left");
    Rng rr = rng.derive("far-right");
    Multigraph bl = random_connected_graph(block_n, block_m, rl);
    Multigraph br = random_connected_graph(block_n, block_m, rr);
    std::vector<std::pair<int, int>> e;
    for (int eid : bl.live_edges()) e.emplace_back(bl.endpoints(eid));
    for (int eid : br.live_edges()) {
        auto [a, b] = br.endpoints(eid);
        e.emplace_back(block_n + a, block_n + b);
    }
    int next = 2 * block_n;
    std::vector<int> firsts;
    for (int i = 0; i < path_count; ++i) {
        int prev = i % block_n;
        firsts.push_back(path_len >= 2 ? next : prev);
        for (int s = 0; s + 1 < path_len; ++s) {
            e.emplace_back(prev, next);
            prev = next++;
        }
        e.emplace_back(prev, block_n + (i % block_n));
    }
    std::vector<int> left, right;
    for (int v = 0; v < block_n; ++v) left.push_back(v);
    for (int v = block_n; v < 2 * block_n; ++v) right.push_back(v);
    return {Multigraph(next, e), VertexSet(std::move(left)), VertexSet(std::move(right)),
            std::move(firsts)};
}

}  // namespace ust
