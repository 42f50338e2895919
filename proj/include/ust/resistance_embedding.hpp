#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "ust/laplacian.hpp"
#include "ust/multigraph.hpp"
#include "ust/rng.hpp"

namespace ust {

// Random-projection resistance embedding: each of the k dimensions solves
// L x = B^T r for a random sign vector r over edges scaled by 1/sqrt(k),
// so squared coordinate distances concentrate around effective
// resistances. With eps = 1/2 the usable guarantee is the two-sided band
// (2/3) R <= R_eff <= 2 R, and a failed band costs only time downstream,
// never correctness.
struct ResistanceEmbedding {
    int n = 0;
    int k = 0;
    double epsilon = 0;
    std::uint64_t seed = 0;
    Eigen::MatrixXd coords;  // n x k

    double distance2(int u, int v) const {
        return (coords.row(u) - coords.row(v)).squaredNorm();
    }
};

inline int embedding_dimension(long long m, double eps, double c) {
    int k = static_cast<int>(std::ceil(c / (eps * eps) * std::log(static_cast<double>(m))));
    return std::max(1, k);
}

inline ResistanceEmbedding build_resistance_embedding(const Multigraph& g, double eps,
                                                      std::uint64_t seed, double c = 4.0,
                                                      double tol = 1e-8,
                                                      long long* solver_iterations = nullptr) {
    ensure(eps > 0, "embedding needs a positive epsilon");
    long long m = g.live_edge_count();
    ensure(m >= 1, "embedding needs at least one edge");
    int n = g.vertex_count();
    int k = embedding_dimension(m, eps, c);

    ResistanceEmbedding emb;
    emb.n = n;
    emb.k = k;
    emb.epsilon = eps;
    emb.seed = seed;
    emb.coords.resize(n, k);

    SparseMat L = build_laplacian(g);
    auto edges = g.live_edges();
    double scale = 1.0 / std::sqrt(static_cast<double>(k));
    SolveOptions opts;
    opts.tol = tol;
    Rng base(seed);
    for (int j = 0; j < k; ++j) {
        Rng rj = base.derive("embed-dim", static_cast<std::uint64_t>(j));
        Vec y = Vec::Zero(n);
        for (int e : edges) {
            auto [a, b] = g.endpoints(e);
            double s = rj.coin(0.5) ? scale : -scale;
            y[a] += s;
            y[b] -= s;
        }
        auto rep = solve_laplacian(L, y, opts);
        if (solver_iterations) *solver_iterations += rep.iterations;
        emb.coords.col(j) = rep.x;
    }
    return emb;
}

}  // namespace ust
