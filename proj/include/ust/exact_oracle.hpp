#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "ust/multigraph.hpp"
#include "ust/union_find.hpp"

namespace ust {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact spanning-tree count: determinant of a Laplacian minor by
// fraction-free (Bareiss) elimination over big integers.
inline BigInt count_spanning_trees(const Multigraph& g) {
    int n = g.vertex_count();
    if (n == 1) return 1;
    int d = n - 1;
    std::vector<std::vector<BigInt>> M(d, std::vector<BigInt>(d, 0));
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        if (a < d) M[a][a] += 1;
        if (b < d) M[b][b] += 1;
        if (a < d && b < d) {
            M[a][b] -= 1;
            M[b][a] -= 1;
        }
    }
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < d; ++k) {
        if (M[k][k] == 0) {
            int r = k + 1;
            while (r < d && M[r][k] == 0) ++r;
            if (r == d) return 0;
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i)
            for (int j = k + 1; j < d; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign > 0 ? M[d - 1][d - 1] : -M[d - 1][d - 1];
}

struct TreeCatalog {
    std::vector<std::vector<int>> trees;          // each: sorted edge ids
    std::map<std::vector<int>, int> index_of;

    int index(const std::vector<int>& sorted_edge_ids) const {
        auto it = index_of.find(sorted_edge_ids);
        return it == index_of.end() ? -1 : it->second;
    }
    int size() const { return static_cast<int>(trees.size()); }
};

// Enumerates every spanning tree (by stable edge id, parallel edges
// distinct). Aborts once the count passes `guard`.
inline TreeCatalog enumerate_spanning_trees(const Multigraph& g, long long guard = 1000000) {
    int n = g.vertex_count();
    std::vector<int> edges = g.live_edges();
    int m = static_cast<int>(edges.size());
    TreeCatalog cat;
    std::vector<int> chosen;

    // Connectivity of chosen edges plus the still-available suffix; used to
    // prune the skip branch.
    auto suffix_connectable = [&](int idx, UnionFind uf) {
        for (int i = idx; i < m; ++i) {
            auto [a, b] = g.endpoints(edges[i]);
            uf.unite(a, b);
            if (uf.components() == 1) return true;
        }
        return uf.components() == 1;
    };

    auto rec = [&](auto&& self, int idx, UnionFind& uf) -> void {
        if (static_cast<int>(chosen.size()) == n - 1) {
            ensure(uf.components() == 1, "enumeration produced a non-spanning forest");
            ensure(static_cast<long long>(cat.trees.size()) < guard,
                   "spanning tree enumeration exceeded guard");
            cat.index_of.emplace(chosen, static_cast<int>(cat.trees.size()));
            cat.trees.push_back(chosen);
            return;
        }
        if (idx == m) return;
        if (static_cast<int>(chosen.size()) + (m - idx) < n - 1) return;
        auto [a, b] = g.endpoints(edges[idx]);
        if (uf.find(a) != uf.find(b)) {
            UnionFind uf2 = uf;
            uf2.unite(a, b);
            chosen.push_back(edges[idx]);
            self(self, idx + 1, uf2);
            chosen.pop_back();
        }
        if (suffix_connectable(idx + 1, uf)) self(self, idx + 1, uf);
    };
    UnionFind uf(n);
    if (n == 1) {
        cat.index_of.emplace(std::vector<int>{}, 0);
        cat.trees.push_back({});
        return cat;
    }
    rec(rec, 0, uf);
    return cat;
}

namespace detail {

// Solves A x = rhs exactly by Gaussian elimination with partial (first
// nonzero) pivoting. A must be square and nonsingular.
inline std::vector<Rational> rational_solve(std::vector<std::vector<Rational>> A,
                                            std::vector<Rational> rhs) {
    int d = static_cast<int>(A.size());
    for (int k = 0; k < d; ++k) {
        int piv = k;
        while (piv < d && A[piv][k] == 0) ++piv;
        ensure(piv < d, "rational solve: singular matrix");
        std::swap(A[k], A[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (int i = k + 1; i < d; ++i) {
            if (A[i][k] == 0) continue;
            Rational f = A[i][k] / A[k][k];
            for (int j = k; j < d; ++j) A[i][j] -= f * A[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<Rational> x(d);
    for (int k = d - 1; k >= 0; --k) {
        Rational s = rhs[k];
        for (int j = k + 1; j < d; ++j) s -= A[k][j] * x[j];
        x[k] = s / A[k][k];
    }
    return x;
}

// Inverts A exactly by Gauss-Jordan elimination.
inline std::vector<std::vector<Rational>> rational_invert(std::vector<std::vector<Rational>> A) {
    int d = static_cast<int>(A.size());
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d, 0));
    for (int i = 0; i < d; ++i) inv[i][i] = 1;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        while (piv < d && A[piv][k] == 0) ++piv;
        ensure(piv < d, "rational invert: singular matrix");
        std::swap(A[k], A[piv]);
        std::swap(inv[k], inv[piv]);
        Rational p = A[k][k];
        for (int j = 0; j < d; ++j) {
            A[k][j] /= p;
            inv[k][j] /= p;
        }
        for (int i = 0; i < d; ++i) {
            if (i == k || A[i][k] == 0) continue;
            Rational f = A[i][k];
            for (int j = 0; j < d; ++j) {
                A[i][j] -= f * A[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

// All-pairs effective resistances from one grounded Laplacian inverse:
// with vertex 0 grounded and M the inverse of the reduced Laplacian,
// R(u,v) = M[u][u] + M[v][v] - 2 M[u][v] (rows/columns of the ground are
// zero). One O(n^3) elimination instead of a solve per pair.
inline std::vector<std::vector<Rational>> exact_all_resistances(const Multigraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<Rational>> A(n - 1, std::vector<Rational>(n - 1, 0));
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        if (a != 0) A[a - 1][a - 1] += 1;
        if (b != 0) A[b - 1][b - 1] += 1;
        if (a != 0 && b != 0) {
            A[a - 1][b - 1] -= 1;
            A[b - 1][a - 1] -= 1;
        }
    }
    auto M = detail::rational_invert(std::move(A));
    auto entry = [&](int u, int v) -> Rational {
        if (u == 0 || v == 0) return 0;
        return M[u - 1][v - 1];
    };
    std::vector<std::vector<Rational>> R(n, std::vector<Rational>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            R[u][v] = R[v][u] = entry(u, u) + entry(v, v) - 2 * entry(u, v);
    return R;
}

// Exact effective resistance between u and v with every edge a unit
// resistor: ground v, push one unit of current into u, read the potential.
inline Rational exact_resistance(const Multigraph& g, int u, int v) {
    if (u == v) return 0;
    int n = g.vertex_count();
    std::vector<int> col(n, -1);
    int d = 0;
    for (int w = 0; w < n; ++w)
        if (w != v) col[w] = d++;
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d, 0));
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        if (a != v) A[col[a]][col[a]] += 1;
        if (b != v) A[col[b]][col[b]] += 1;
        if (a != v && b != v) {
            A[col[a]][col[b]] -= 1;
            A[col[b]][col[a]] -= 1;
        }
    }
    std::vector<Rational> rhs(d, 0);
    rhs[col[u]] = 1;
    auto x = detail::rational_solve(std::move(A), std::move(rhs));
    return x[col[u]];
}

// Probability that a tree edge is included in a uniform spanning tree;
// for a unit-resistor multigraph this is the effective resistance across
// the edge's endpoints (each parallel copy separately).
inline Rational exact_edge_inclusion(const Multigraph& g, int e) {
    auto [a, b] = g.endpoints(e);
    return exact_resistance(g, a, b);
}

// First-exit distribution out of S for a simple random walk: for every
// start v in S and boundary edge e of S, the probability that e is the
// first boundary edge the walk crosses. Probabilities for boundary edges
// sharing their inner endpoint u coincide, so one linear system per inner
// endpoint suffices: (D - A_S) p = e_u with full degrees on the diagonal.
// Returned as exit[v][e] keyed by position of v in S and edge id.
inline std::vector<std::map<int, Rational>> exact_exit_distributions(const Multigraph& g,
                                                                     const VertexSet& s) {
    int n = g.vertex_count();
    auto in_s = to_flags(s, n);
    int d = s.size();
    std::vector<int> col(n, -1);
    for (int i = 0; i < d; ++i) col[s.ids[i]] = i;

    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d, 0));
    for (int i = 0; i < d; ++i) A[i][i] = g.degree(s.ids[i]);
    EdgeSet bd = boundary(g, s);
    for (int e : interior(g, s)) {
        auto [a, b] = g.endpoints(e);
        A[col[a]][col[b]] -= 1;
        A[col[b]][col[a]] -= 1;
    }

    std::vector<std::map<int, Rational>> exit(d);
    std::map<int, std::vector<Rational>> by_inner;  // inner endpoint -> solution
    for (int e : bd) {
        auto [a, b] = g.endpoints(e);
        int u = in_s[a] ? a : b;
        if (!by_inner.count(u)) {
            std::vector<Rational> rhs(d, 0);
            rhs[col[u]] = 1;
            by_inner[u] = detail::rational_solve(A, rhs);
        }
        const auto& x = by_inner[u];
        for (int i = 0; i < d; ++i) exit[i][e] = x[i];
    }
    return exit;
}

}  // namespace ust
