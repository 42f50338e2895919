#pragma once

#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "ust/covering_family.hpp"
#include "ust/marginal_sampling.hpp"
#include "ust/multigraph.hpp"
#include "ust/random_walk.hpp"
#include "ust/resistance_embedding.hpp"
#include "ust/rng.hpp"
#include "ust/shattering.hpp"

namespace ust {

enum class Algo { aldous_broder, wilson, mst_fast };

inline const char* algo_name(Algo a) {
    switch (a) {
        case Algo::aldous_broder: return "aldous-broder";
        case Algo::wilson: return "wilson";
        case Algo::mst_fast: return "mst-fast";
    }
    return "?";
}

inline Algo algo_from_name(const std::string& s) {
    if (s == "aldous-broder" || s == "ab") return Algo::aldous_broder;
    if (s == "wilson") return Algo::wilson;
    if (s == "mst-fast" || s == "fast") return Algo::mst_fast;
    throw std::invalid_argument("unknown algorithm: " + s);
}

struct SampleOptions {
    std::uint64_t seed = 1;
    Algo algo = Algo::mst_fast;
    long long bailout_edges = 512;  // below this the covering walk is already cheap
    double embed_epsilon = 0.5;
    double embed_c = 4.0;
    double tol = 1e-8;       // exit-distribution tables
    double embed_tol = 1e-5; // embedding solves feed routing decisions only
    bool collect_log = false;
};

struct SampleResult {
    EdgeSet tree;
    nlohmann::json log = nlohmann::json::array();
    long long faithful_steps = 0;
    long long jumps = 0;
    int samplers_built = 0;
};

struct ConditionFamilyOutcome {
    Multigraph graph;
    CoveringFamily family;
    std::vector<int> vertex_map;
};

// Applies the sampled first-visit restriction: contracts f_prime, deletes
// the rest of f_star, maps every family set through the vertex mapping and
// bumps finished minimum-age components to the deepest level via singleton
// sets. Always-on checks: per-level boundary counts are unchanged by the
// mapping, the family stays valid, ages move past r*, and at the deepest
// age every surviving edge is a boundary edge.
inline ConditionFamilyOutcome condition_family(const Multigraph& g, const CoveringFamily& cf,
                                               const Overlay& ov, const MinimumAgeInterior& mai,
                                               const EdgeSet& f_prime) {
    auto before = i_based_boundary_counts(cf, g);
    auto cr = g.condition(mai.f_star, f_prime);

    CoveringFamily nf;
    nf.ell = cf.ell;
    nf.m_original = cf.m_original;
    nf.levels.assign(cf.ell + 1, {});
    {
        std::vector<int> all(cr.graph.vertex_count());
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<int>(v);
        nf.levels[0].push_back(VertexSet(std::move(all)));
    }
    for (int i = 1; i <= cf.ell; ++i)
        for (const auto& s : cf.levels[i]) {
            std::vector<int> mapped;
            mapped.reserve(s.size());
            for (int v : s) mapped.push_back(cr.vertex_map[v]);
            nf.levels[i].push_back(VertexSet(std::move(mapped)));
        }

    auto after = i_based_boundary_counts(nf, cr.graph);
    for (int i = 1; i <= cf.ell; ++i)
        ensure(before[i] == after[i], "conditioning changed level boundary counts");

    if (mai.r_star < cf.ell) {
        std::set<int> finished;
        for (int c : mai.component_ids)
            for (int v : ov.components[c].vertices) finished.insert(cr.vertex_map[v]);
        for (int v : finished) nf.levels[cf.ell].push_back(VertexSet::of({v}));
        Overlay nov = build_overlay(nf, cr.graph);
        int new_min = nf.ell;
        for (const auto& c : nov.components) new_min = std::min(new_min, c.age);
        ensure(new_min >= mai.r_star + 1, "conditioning failed to raise the family age");
    } else {
        auto low = lowest_boundary_level(nf, cr.graph);
        for (int e : cr.graph.live_edges())
            ensure(low[e] >= 1, "edge survived the final conditioning without being a boundary edge");
    }

    auto validity = validate_covering_family(nf, cr.graph);
    ensure(validity.ok, "conditioned family invalid: " + validity.reason);
    return {std::move(cr.graph), std::move(nf), std::move(cr.vertex_map)};
}

// Full sampler: alternate shattering, marginal sampling on the finished
// components' interior edges, and conditioning, until every surviving edge
// is a boundary edge of some family set; then one covering walk on the
// residual graph finishes the tree. Contracted edges plus the residual
// tree are a uniform spanning tree of the input graph.
inline SampleResult sample_spanning_tree(const Multigraph& g0, const SampleOptions& opts = {}) {
    Rng master(opts.seed);
    SampleResult out;

    if (opts.algo == Algo::aldous_broder) {
        Rng r = master.derive("walk");
        out.tree = aldous_broder(g0, r);
        return out;
    }
    if (opts.algo == Algo::wilson) {
        Rng r = master.derive("walk");
        out.tree = wilson(g0, r);
        return out;
    }

    Multigraph work = g0;
    CoveringFamily cf = CoveringFamily::trivial(work);
    InsertionLedger ledger(cf.ell);
    std::vector<int> tree;
    int iter = 0;
    int last_r = -1;

    while (true) {
        ensure(iter <= cf.ell + 1, "main loop ran past the iteration bound");
        if (work.vertex_count() == 1) break;
        if (work.live_edge_count() <= opts.bailout_edges) {
            Rng r = master.derive("bailout", iter);
            WalkStats st;
            for (int e : aldous_broder(work, r, 0, &st)) tree.push_back(e);
            out.faithful_steps += st.steps;
            work = Multigraph(1, {});
            break;
        }
        {
            // Terminate once no family component has interior edges left.
            auto low = lowest_boundary_level(cf, work);
            bool all_boundary = true;
            for (int e : work.live_edges())
                if (low[e] < 1) {
                    all_boundary = false;
                    break;
                }
            if (all_boundary) break;
        }

        Rng embed_rng = master.derive("embed", iter);
        ResistanceEmbedding emb = build_resistance_embedding(
            work, opts.embed_epsilon, embed_rng.u64(), opts.embed_c, opts.embed_tol);
        ExtendReport xrep;
        cf = extend_to_shattering(work, cf, emb, ledger, &xrep);

        Overlay ov = build_overlay(cf, work);
        MinimumAgeInterior mai = minimum_age_interior(ov, work);
        ensure(mai.r_star > last_r, "family age failed to increase");
        last_r = mai.r_star;

        Rng walk_rng = master.derive("walk", iter);
        MarginalOptions mopts;
        mopts.tol = opts.tol;
        MarginalResult mres = sample_marginal(work, cf, ov, mai, walk_rng, mopts);
        for (int e : mres.f_prime) tree.push_back(e);
        out.faithful_steps += mres.stats.faithful_steps;
        out.jumps += mres.stats.jumps_over_escape + mres.stats.jumps_over_f;
        out.samplers_built += mres.stats.samplers_built;

        if (opts.collect_log) {
            nlohmann::json rec = mres.stats.to_json();
            rec["iteration"] = iter;
            rec["r_star"] = mai.r_star;
            rec["f_star"] = mai.f_star.size();
            rec["f_prime"] = mres.f_prime.size();
            rec["edges_remaining"] = work.live_edge_count() - static_cast<long long>(mai.f_star.size());
            rec["cut_branch_fires"] = xrep.cut_branch_fires;
            rec["insertions_per_level"] = xrep.insertions_per_level;
            rec["max_certificate"] = xrep.max_certificate;
            rec["observed_alpha"] = observed_alpha(cf, work);
            out.log.push_back(rec);
        }

        auto cond = condition_family(work, cf, ov, mai, mres.f_prime);
        work = std::move(cond.graph);
        cf = std::move(cond.family);
        ++iter;
    }

    if (work.vertex_count() > 1) {
        Rng r = master.derive("residual");
        WalkStats st;
        for (int e : aldous_broder(work, r, 0, &st)) tree.push_back(e);
        out.faithful_steps += st.steps;
    }

    out.tree = EdgeSet(std::move(tree));
    ensure(is_spanning_tree(g0, out.tree), "assembled edge set is not a spanning tree");
    return out;
}

}  // namespace ust
