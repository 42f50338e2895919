#pragma once

#include <cmath>
#include <vector>

#include "ust/multigraph.hpp"

namespace ust {

// Partition of `within` into low-diameter pieces with few edges between
// them: every piece ends its growth with |boundary| <= phi * |interior|,
// which caps piece diameters at gamma = 2*ln(m+1)/phi and the total number
// of cut edges at phi * m (m = interior edge count of `within`).
struct Decomposition {
    std::vector<VertexSet> components;  // in creation order (seeded by lowest unassigned id)
    double phi = 0;
    double gamma = 0;          // diameter bound 2*ln(m+1)/phi
    long long within_edges = 0;  // m used for the bound
};

inline Decomposition ball_grow(const Multigraph& g, const VertexSet& within, double phi) {
    ensure(phi > 0, "ball growing needs phi > 0");
    int n = g.vertex_count();
    auto in_within = to_flags(within, n);

    long long m_sub = 0;
    for (int e = 0; e < g.edge_id_space(); ++e) {
        if (!g.edge_alive(e)) continue;
        auto [a, b] = g.endpoints(e);
        if (in_within[a] && in_within[b]) ++m_sub;
    }

    Decomposition dec;
    dec.phi = phi;
    dec.gamma = 2.0 * std::log(static_cast<double>(m_sub) + 1.0) / phi;
    dec.within_edges = m_sub;

    std::vector<char> assigned(n, 0);
    // 0 = unseen, 1 = one endpoint inside the ball, 2 = interior to it
    std::vector<char> edge_state(g.edge_id_space(), 0);
    std::vector<char> in_ball(n, 0);

    for (int seed = 0; seed < n; ++seed) {
        if (!in_within[seed] || assigned[seed]) continue;

        std::vector<int> ball{seed};
        std::vector<int> frontier;
        in_ball[seed] = 1;
        long long interior_cnt = 0, boundary_cnt = 0;

        auto absorb = [&](int v) {
            // v just joined the ball: reclassify its incident edges and
            // collect fresh frontier vertices.
            for (const auto& inc : g.incident(v)) {
                if (!in_within[inc.to] || assigned[inc.to]) continue;
                char& st = edge_state[inc.edge];
                if (st == 0) {
                    if (in_ball[inc.to]) {
                        st = 2;
                        ++interior_cnt;
                    } else {
                        st = 1;
                        ++boundary_cnt;
                        frontier.push_back(inc.to);
                    }
                } else if (st == 1 && in_ball[inc.to]) {
                    st = 2;
                    --boundary_cnt;
                    ++interior_cnt;
                }
            }
        };
        absorb(seed);

        while (boundary_cnt > phi * static_cast<double>(interior_cnt)) {
            // D := N(D): swallow the whole frontier.
            std::vector<int> adding;
            adding.swap(frontier);
            std::vector<int> unique_add;
            for (int v : adding) {
                if (in_ball[v]) continue;
                in_ball[v] = 1;
                unique_add.push_back(v);
            }
            for (int v : unique_add) {
                ball.push_back(v);
                absorb(v);
            }
        }

        for (int v : ball) {
            assigned[v] = 1;
            in_ball[v] = 0;
        }
        // Reset cross-edge states so later balls count their own
        // boundaries from scratch; edges to assigned vertices no longer
        // participate.
        for (int v : ball)
            for (const auto& inc : g.incident(v)) edge_state[inc.edge] = 0;

        dec.components.push_back(VertexSet(std::move(ball)));
    }
    return dec;
}

struct DecompositionCheck {
    bool ok = true;
    int max_diameter = 0;
    long long cut_edges = 0;
    double diameter_bound = 0;
    double cut_bound = 0;
};

// Verifies the decomposition contract exactly: per-piece induced diameter
// (full BFS) within gamma and cross edges within phi*m.
inline DecompositionCheck verify_decomposition(const Multigraph& g, const VertexSet& within,
                                               const Decomposition& dec) {
    DecompositionCheck chk;
    chk.diameter_bound = dec.gamma;
    chk.cut_bound = dec.phi * static_cast<double>(dec.within_edges);

    int n = g.vertex_count();
    std::vector<int> comp_of(n, -1);
    long long covered = 0;
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        for (int v : dec.components[i]) {
            if (comp_of[v] != -1) chk.ok = false;  // overlap
            comp_of[v] = static_cast<int>(i);
        }
        covered += dec.components[i].size();
        int diam = induced_diameter(g, dec.components[i]);
        if (diam < 0) chk.ok = false;  // piece not internally connected
        chk.max_diameter = std::max(chk.max_diameter, diam);
    }
    if (covered != within.size()) chk.ok = false;
    for (int v : within)
        if (comp_of[v] < 0) chk.ok = false;

    auto in_within = to_flags(within, n);
    for (int e = 0; e < g.edge_id_space(); ++e) {
        if (!g.edge_alive(e)) continue;
        auto [a, b] = g.endpoints(e);
        if (in_within[a] && in_within[b] && comp_of[a] != comp_of[b]) ++chk.cut_edges;
    }
    if (chk.max_diameter > chk.diameter_bound) chk.ok = false;
    if (static_cast<double>(chk.cut_edges) > chk.cut_bound) chk.ok = false;
    return chk;
}

}  // namespace ust
