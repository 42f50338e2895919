#pragma once

#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <vector>

#include "ust/ball_growing.hpp"
#include "ust/covering_family.hpp"
#include "ust/multigraph.hpp"
#include "ust/random_walk.hpp"
#include "ust/shortcut_sampler.hpp"

namespace ust {

struct MarginalStats {
    long long faithful_steps = 0;
    long long jumps_over_escape = 0;
    long long jumps_over_f = 0;
    int samplers_built = 0;
    long long solver_iterations = 0;

    nlohmann::json to_json() const {
        return {{"faithful_steps", faithful_steps},
                {"jumps_over_escape", jumps_over_escape},
                {"jumps_over_F", jumps_over_f},
                {"samplers_built", samplers_built},
                {"solver_iterations", solver_iterations}};
    }
};

struct MarginalOptions {
    double tol = 1e-8;
    long long max_operations = 1LL << 50;
};

struct MarginalResult {
    EdgeSet f_prime;  // first-visit restriction of the minimum-age interior
    MarginalStats stats;
};

// Restricts a candidate edge set to those edges that carried a first visit.
inline EdgeSet first_visit_restriction(const Multigraph& g, const EdgeSet& candidates,
                                       const std::vector<int>& first_visit_edge) {
    std::vector<int> kept;
    for (int e : candidates) {
        auto [a, b] = g.endpoints(e);
        if (first_visit_edge[a] == e || first_visit_edge[b] == e) kept.push_back(e);
    }
    return EdgeSet(std::move(kept));
}

// Runs a random walk whose restriction to the minimum-age interior edges
// F* is exact, shortcutting everywhere the first-visit pattern of F* can
// no longer change:
//  - over a cover piece once all its F*-endpoints are visited,
//  - over the level-r* partition piece of a minimum-age component once
//    that component is finished,
//  - over the witness set of any component older than r* (those never
//    contain F*-endpoints).
// Every jump crosses a sampled boundary edge whose outer endpoint gets
// that edge as its first visit; inside a jumped set nothing can change.
// The walk stops when every F*-endpoint has been visited.
inline MarginalResult sample_marginal(const Multigraph& g, const CoveringFamily& cf,
                                      const Overlay& ov, const MinimumAgeInterior& mai, Rng& rng,
                                      const MarginalOptions& opts = {}) {
    MarginalResult out;
    if (mai.f_star.empty()) return out;
    int n = g.vertex_count();

    // Interesting vertices: endpoints of F* edges.
    std::vector<char> interesting(n, 0);
    for (int e : mai.f_star) {
        auto [a, b] = g.endpoints(e);
        interesting[a] = interesting[b] = 1;
    }

    // Cover for the jump-when-finished rule, grown on the whole graph.
    long long m = cf.m_original;
    double m23 = std::cbrt(static_cast<double>(m) * static_cast<double>(m));
    double phi_f = std::min(0.25, 4.0 * std::log(static_cast<double>(m) + 1.0) / m23);
    std::vector<int> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    Decomposition cover = ball_grow(g, VertexSet(std::move(all)), phi_f);
    std::vector<int> piece_of(n, -1);
    std::vector<char> piece_has_boundary(cover.components.size(), 0);
    std::vector<int> piece_pending(cover.components.size(), 0);
    for (std::size_t i = 0; i < cover.components.size(); ++i) {
        for (int v : cover.components[i]) {
            piece_of[v] = static_cast<int>(i);
            if (interesting[v]) ++piece_pending[i];
        }
        piece_has_boundary[i] = !boundary(g, cover.components[i]).empty();
    }

    // Escape sets per overlay component.
    std::vector<char> is_min_age(ov.components.size(), 0);
    for (int c : mai.component_ids) is_min_age[c] = 1;
    LevelPartition lp;
    if (mai.r_star >= 1) lp = partition_level(cf, g, mai.r_star);
    std::vector<int> comp_pending(ov.components.size(), 0);
    for (int v = 0; v < n; ++v)
        if (interesting[v]) ++comp_pending[ov.component_of[v]];

    // Lazily constructed shortcut samplers, shared across queries.
    std::map<std::pair<int, long long>, std::unique_ptr<ShortcutSampler>> samplers;
    auto sampler_for = [&](int kind, long long key, const VertexSet& set) -> ShortcutSampler& {
        auto it = samplers.find({kind, key});
        if (it == samplers.end()) {
            it = samplers
                     .emplace(std::make_pair(kind, key),
                              std::make_unique<ShortcutSampler>(g, set, opts.tol))
                     .first;
            ++out.stats.samplers_built;
        }
        return *it->second;
    };

    std::vector<char> visited(n, 0);
    std::vector<int> first_visit_edge(n, -1);
    long long pending = 0;
    for (int v = 0; v < n; ++v) pending += interesting[v];
    int start = -1;
    {
        auto [a, b] = g.endpoints(mai.f_star.ids.front());
        start = std::min(a, b);
        for (int e : mai.f_star) {
            auto [x, y] = g.endpoints(e);
            start = std::min({start, x, y});
        }
    }
    auto visit = [&](int v, int via_edge) {
        if (visited[v]) return;
        visited[v] = 1;
        first_visit_edge[v] = via_edge;
        if (interesting[v]) {
            --pending;
            --piece_pending[piece_of[v]];
            --comp_pending[ov.component_of[v]];
        }
    };
    visit(start, -1);

    int v = start;
    long long ops = 0;
    while (pending > 0) {
        ensure(++ops <= opts.max_operations, "marginal walk exceeded the operation budget");
        int fp = piece_of[v];
        int pc = ov.component_of[v];
        if (piece_has_boundary[fp] && piece_pending[fp] == 0) {
            ShortcutSampler& s = sampler_for(0, fp, cover.components[fp]);
            int e = s.sample_exit(v, rng);
            auto [a, b] = g.endpoints(e);
            int w = s.covered().contains(a) ? b : a;
            visit(w, e);
            v = w;
            ++out.stats.jumps_over_f;
            continue;
        }
        if (is_min_age[pc]) {
            if (comp_pending[pc] > 0 || mai.r_star == 0) {
                Incidence inc = walk_step(g, v, rng);
                visit(inc.to, inc.edge);
                v = inc.to;
                ++out.stats.faithful_steps;
                continue;
            }
            int piece = lp.component_of[v];
            ShortcutSampler& s = sampler_for(1, piece, lp.components[piece]);
            int e = s.sample_exit(v, rng);
            auto [a, b] = g.endpoints(e);
            int w = s.covered().contains(a) ? b : a;
            visit(w, e);
            v = w;
            ++out.stats.jumps_over_escape;
            continue;
        }
        const OverlayComponent& oc = ov.components[pc];
        long long key = static_cast<long long>(oc.witness_level) * (1LL << 32) + oc.witness_index;
        ShortcutSampler& s = sampler_for(2, key, cf.levels[oc.witness_level][oc.witness_index]);
        int e = s.sample_exit(v, rng);
        auto [a, b] = g.endpoints(e);
        int w = s.covered().contains(a) ? b : a;
        visit(w, e);
        v = w;
        ++out.stats.jumps_over_escape;
    }

    for (auto& [key, s] : samplers) out.stats.solver_iterations += s->solver_iterations();
    out.f_prime = first_visit_restriction(g, mai.f_star, first_visit_edge);
    return out;
}

}  // namespace ust
