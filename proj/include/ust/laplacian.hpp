#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>

#include "ust/multigraph.hpp"

namespace ust {

using SparseMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

inline SparseMat build_laplacian(const Multigraph& g) {
    int n = g.vertex_count();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(4 * static_cast<std::size_t>(g.live_edge_count()));
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        t.emplace_back(a, a, 1.0);
        t.emplace_back(b, b, 1.0);
        t.emplace_back(a, b, -1.0);
        t.emplace_back(b, a, -1.0);
    }
    SparseMat L(n, n);
    L.setFromTriplets(t.begin(), t.end());
    return L;
}

struct SolveOptions {
    double tol = 1e-8;       // relative residual target ||Lx-b|| <= tol*||b||
    int max_iterations = 0;  // 0 = default cap 20*sqrt(n) + 200
};

struct SolveReport {
    Vec x;
    double residual;  // achieved relative residual
    int iterations;
};

struct SolveFailure : std::runtime_error {
    double residual;
    int iterations;
    SolveFailure(double r, int it)
        : std::runtime_error("Laplacian solve did not converge: relative residual " +
                             std::to_string(r) + " after " + std::to_string(it) + " iterations"),
          residual(r),
          iterations(it) {}
};

inline int default_iteration_cap(int n) {
    return static_cast<int>(20.0 * std::sqrt(static_cast<double>(n))) + 200;
}

namespace detail {

// Jacobi-preconditioned conjugate gradient. Deterministic given (A, b,
// options). `project` removes the all-ones component after every update,
// pinning the representative when A is a (singular) Laplacian.
inline SolveReport pcg(const SparseMat& A, const Vec& b, const SolveOptions& opts, bool project) {
    int n = static_cast<int>(A.rows());
    Vec dinv(n);
    for (int i = 0; i < n; ++i) {
        double d = A.coeff(i, i);
        dinv[i] = d > 0 ? 1.0 / d : 1.0;
    }
    double bnorm = b.norm();
    if (bnorm == 0) return {Vec::Zero(n), 0.0, 0};
    int cap = opts.max_iterations > 0 ? opts.max_iterations : default_iteration_cap(n);

    Vec x = Vec::Zero(n);
    Vec r = b;
    Vec z = dinv.asDiagonal() * r;
    Vec p = z;
    double rz = r.dot(z);
    double rel = r.norm() / bnorm;
    int it = 0;
    while (rel > opts.tol) {
        if (it >= cap) throw SolveFailure(rel, it);
        Vec Ap = A * p;
        double pAp = p.dot(Ap);
        if (pAp <= 0) throw SolveFailure(rel, it);  // numerical breakdown
        double alpha = rz / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        z = dinv.asDiagonal() * r;
        double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
        rel = r.norm() / bnorm;
        ++it;
    }
    if (project) x.array() -= x.mean();
    return {std::move(x), rel, it};
}

}  // namespace detail

// Solves L x = b for a graph Laplacian. b must sum to ~0 (range of L);
// the returned representative has mean zero.
inline SolveReport solve_laplacian(const SparseMat& L, const Vec& b,
                                   const SolveOptions& opts = {}) {
    double bsum = std::abs(b.sum());
    ensure(bsum <= 1e-9 * (1.0 + b.cwiseAbs().sum()),
           "solve_laplacian: right-hand side must sum to zero");
    return detail::pcg(L, b, opts, true);
}

inline double effective_resistance(const Multigraph& g, int u, int v, double tol = 1e-8) {
    if (u == v) return 0.0;
    SparseMat L = build_laplacian(g);
    Vec b = Vec::Zero(g.vertex_count());
    b[u] = 1;
    b[v] = -1;
    SolveOptions opts;
    opts.tol = tol;
    auto rep = solve_laplacian(L, b, opts);
    return rep.x[u] - rep.x[v];
}

// Voltages with source pinned to 1 and sink to 0; interior values are the
// probabilities of reaching source before sink. Entries land in [0, 1]
// (clamped against roundoff).
inline Vec harmonic_voltages(const Multigraph& g, int source, int sink, double tol = 1e-8,
                             int* iterations = nullptr) {
    ensure(source != sink, "harmonic voltages need distinct terminals");
    int n = g.vertex_count();
    std::vector<int> col(n, -1);
    int d = 0;
    for (int v = 0; v < n; ++v)
        if (v != source && v != sink) col[v] = d++;

    Vec q(n);
    q[source] = 1.0;
    q[sink] = 0.0;
    if (d > 0) {
        std::vector<Eigen::Triplet<double>> t;
        Vec rhs = Vec::Zero(d);
        for (int e : g.live_edges()) {
            auto [a, b] = g.endpoints(e);
            for (int side = 0; side < 2; ++side) {
                int x = side == 0 ? a : b;
                int y = side == 0 ? b : a;
                if (col[x] < 0) continue;
                t.emplace_back(col[x], col[x], 1.0);
                if (col[y] >= 0)
                    t.emplace_back(col[x], col[y], -1.0);
                else if (y == source)
                    rhs[col[x]] += 1.0;
            }
        }
        SparseMat A(d, d);
        A.setFromTriplets(t.begin(), t.end());
        SolveOptions opts;
        opts.tol = tol;
        auto rep = detail::pcg(A, rhs, opts, false);
        if (iterations) *iterations += rep.iterations;
        for (int v = 0; v < n; ++v)
            if (col[v] >= 0) q[v] = std::clamp(rep.x[col[v]], 0.0, 1.0);
    }
    return q;
}

}  // namespace ust
