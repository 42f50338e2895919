#pragma once

#include <cmath>
#include <vector>

#include "ust/ball_growing.hpp"
#include "ust/covering_family.hpp"
#include "ust/min_cut.hpp"
#include "ust/multigraph.hpp"
#include "ust/resistance_embedding.hpp"

namespace ust {

// All thresholds derive from the frozen original edge count m. ball_phi
// clamps at 1/4, so the guaranteed piece diameter is delta_cap =
// 2*ln(m+1)/ball_phi, which equals m^{1/3} once m is large enough for the
// unclamped phi; the certificate budget gamma_star_effective accounts for
// that and coincides with the nominal 56*m^{1/3} in the unclamped regime.
struct CutterConfig {
    long long m_original = 0;
    double m13 = 0;                    // m^{1/3}
    long long large_interior = 0;      // strict threshold: large <=> interior > this
    double far_threshold = 0;          // 13.5 * m^{1/3} on embedding estimates
    double ball_phi = 0;               // min(1/4, 2*ln(m+1)/m^{1/3})
    double delta_cap = 0;              // piece diameter guarantee
    double gamma_star = 0;             // 56 * m^{1/3}
    double gamma_star_effective = 0;   // 54 * m^{1/3} + 2 * delta_cap

    static CutterConfig from_edge_count(long long m) {
        ensure(m >= 1, "cutter needs at least one edge");
        CutterConfig c;
        c.m_original = m;
        c.m13 = std::cbrt(static_cast<double>(m));
        c.large_interior = icbrt_floor(m * m);
        c.far_threshold = 13.5 * c.m13;
        c.ball_phi = std::min(0.25, 2.0 * std::log(static_cast<double>(m) + 1.0) / c.m13);
        c.delta_cap = 2.0 * std::log(static_cast<double>(m) + 1.0) / c.ball_phi;
        c.gamma_star = 56.0 * c.m13;
        c.gamma_star_effective = 54.0 * c.m13 + 2.0 * c.delta_cap;
        return c;
    }
};

// Counts insertions into levels 0 < i < ell over a whole run. Each
// inserted set covers more than m/2^{i+1} fresh interior edges and
// same-level interiors never overlap (even across conditioning), so the
// per-level count stays below 2^{i+1}.
struct InsertionLedger {
    int ell = 0;
    std::vector<long long> inserted;

    explicit InsertionLedger(int levels) : ell(levels), inserted(std::max(levels + 1, 1), 0) {}

    void record(int level) {
        ensure(level > 0 && level < ell, "insertion level out of range");
        ++inserted[level];
        ensure(inserted[level] < (1LL << (level + 1)),
               "level insertion budget exceeded: level " + std::to_string(level));
    }
};

struct ExtendReport {
    int cut_branch_fires = 0;
    int small_pieces_added = 0;
    int soft_cut_bound_violations = 0;  // |K| exceeded m^{1/3} (embedding-dependent expectation)
    std::vector<int> insertions_per_level;
    std::vector<double> component_certificates;  // per final overlay component
    double max_certificate = 0;
};

inline EdgeSet find_separating_cut(const Multigraph& g, const VertexSet& p1,
                                   const VertexSet& p2) {
    return min_cut_between(g, p1, p2).cut_edges;
}

struct RefineResult {
    VertexSet s;
    int level = 0;
};

namespace detail {

struct AgeInfo {
    int age = 0;
    int witness_index = 0;
};

// Age and witness of an overlay component, read off any of its vertices.
inline AgeInfo component_age(const std::vector<std::vector<int>>& member, int v, int ell) {
    for (int i = ell; i >= 0; --i)
        if (member[i][v] >= 0) return {i, member[i][v]};
    ensure(false, "vertex outside level 0");
    return {};
}

}  // namespace detail

// Given a cut K separating large pieces P1, P2 of component P, derives a
// set S eligible for insertion at some level 0 < i < ell: S keeps exactly
// one of the pieces, stays clear of existing level-i sets, lands in the
// (m/2^{i+1}, m/2^i] interior band, and adds no boundary edges beyond K
// and boundaries already present at levels <= i. All five properties are
// asserted before returning.
inline RefineResult refine_set(const Multigraph& g, const CoveringFamily& cf, const VertexSet& p,
                               const VertexSet& p1, const VertexSet& p2, const EdgeSet& k_cut) {
    ensure(cf.ell >= 2, "refinement needs at least three levels");
    long long m = cf.m_original;
    int n = g.vertex_count();
    auto member = family_membership(cf, g);
    auto age = detail::component_age(member, p.ids.front(), cf.ell);

    // Components of G - K; A1 = union of those touching P1.
    std::vector<char> cut_edge(g.edge_id_space(), 0);
    for (int e : k_cut) cut_edge[e] = 1;
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& inc : g.incident(v)) {
                if (cut_edge[inc.edge] || comp[inc.to] >= 0) continue;
                comp[inc.to] = ncomp;
                stack.push_back(inc.to);
            }
        }
        ++ncomp;
    }
    std::vector<char> a1_comp(ncomp, 0);
    for (int v : p1) a1_comp[comp[v]] = 1;
    for (int v : p2)
        ensure(!a1_comp[comp[v]], "cut does not separate the pieces");

    const VertexSet& witness = cf.levels[age.age][age.witness_index];
    std::vector<int> u1_raw, u2_raw;
    for (int v : witness) (a1_comp[comp[v]] ? u1_raw : u2_raw).push_back(v);
    VertexSet u1(std::move(u1_raw)), u2(std::move(u2_raw));
    bool keeps_p1 = true;
    if (interior(g, u1).size() > interior(g, u2).size()) {
        std::swap(u1, u2);
        keeps_p1 = false;
    }

    int i = 1;
    while (true) {
        long long eu1 = interior(g, u1).size();
        if (eu1 <= (m >> (i + 1))) {
            ++i;
            ensure(i < cf.ell, "refinement ran past the deepest insertable level");
            continue;
        }
        ensure(i > age.age, "refinement visiting levels at or below the component age");
        std::vector<int> rm;
        for (const auto& s : cf.levels[i]) {
            auto inter = u1.set_intersection(s);
            rm.insert(rm.end(), inter.begin(), inter.end());
        }
        if (!rm.empty()) {
            u1 = u1.set_difference(VertexSet(std::move(rm)));
            continue;
        }
        break;
    }

    // Condition (1): insertable level.
    ensure(i > 0 && i < cf.ell, "refined level out of range");
    // Condition (2): interior band.
    long long es = interior(g, u1).size();
    ensure(es > (m >> (i + 1)) && es <= (m >> i), "refined set outside the interior band");
    // Condition (3): disjoint from existing level-i sets.
    for (const auto& s : cf.levels[i])
        ensure(u1.set_intersection(s).empty(), "refined set overlaps a level set");
    // Condition (4): exactly one piece kept, the other untouched.
    const VertexSet& kept = keeps_p1 ? p1 : p2;
    const VertexSet& dropped = keeps_p1 ? p2 : p1;
    ensure(kept.set_difference(u1).empty(), "kept piece escaped the refined set");
    ensure(u1.set_intersection(dropped).empty(), "refined set touches the far piece");
    // Condition (5): new boundary only from K or from existing <= i level
    // boundaries.
    auto low = lowest_boundary_level(cf, g);
    for (int e : boundary(g, u1))
        ensure(cut_edge[e] || (low[e] >= 0 && low[e] <= i),
               "refined set exposes an unaccounted boundary edge");

    return {std::move(u1), i};
}

// Extends the family until every overlay component carries a resistance
// diameter certificate: pieces from ball growing are certified by their
// graph diameter, unions of mutually-close large pieces by embedding
// distances through the first representative. Components that fail the
// closeness test get cut and the two halves are reprocessed. New sets for
// small pieces land at the deepest level (subdividing the witness in
// place when the component already lives there); cut-derived sets land at
// interior levels through refine_set, counted by the ledger.
inline CoveringFamily extend_to_shattering(const Multigraph& g, CoveringFamily cf,
                                           const ResistanceEmbedding& emb,
                                           InsertionLedger& ledger,
                                           ExtendReport* report = nullptr) {
    CutterConfig cfg = CutterConfig::from_edge_count(cf.m_original);
    int n = g.vertex_count();
    ensure(emb.n == n, "embedding built for a different graph");
    ExtendReport local;
    ExtendReport& rep = report ? *report : local;
    rep.insertions_per_level.assign(cf.ell + 1, 0);

    if (cf.ell == 0) return cf;  // single-level family: nothing to refine

    std::vector<char> seen(n, 0);
    std::vector<double> vertex_cert(n, 0.0);
    bool family_dirty = false;

    auto add_small_pieces = [&](const VertexSet& p, const std::vector<VertexSet>& smalls) {
        if (smalls.empty()) return;
        family_dirty = true;
        auto member = family_membership(cf, g);
        auto age = detail::component_age(member, p.ids.front(), cf.ell);
        if (age.age == cf.ell) {
            // Pieces sit inside an existing deepest-level set: subdivide it.
            VertexSet& w = cf.levels[cf.ell][age.witness_index];
            VertexSet carved = w;
            for (const auto& s : smalls) carved = carved.set_difference(s);
            if (carved.empty())
                cf.levels[cf.ell].erase(cf.levels[cf.ell].begin() + age.witness_index);
            else
                w = carved;
        }
        for (const auto& s : smalls) {
            ensure(cf.level_capacity_ok(cf.ell, interior(g, s).size()),
                   "small piece exceeds deepest level capacity");
            cf.levels[cf.ell].push_back(s);
            ++rep.small_pieces_added;
        }
    };

    auto process = [&](auto&& self, const VertexSet& p) -> void {
        Decomposition dec = ball_grow(g, p, cfg.ball_phi);
        std::vector<VertexSet> smalls;
        std::vector<int> small_diam;
        std::vector<int> large;  // indices into dec.components
        std::vector<int> diam(dec.components.size(), 0);
        for (std::size_t i = 0; i < dec.components.size(); ++i) {
            diam[i] = induced_diameter(g, dec.components[i]);
            ensure(diam[i] >= 0 && diam[i] <= cfg.delta_cap + 1e-9,
                   "piece diameter above the growth guarantee");
            long long ei = interior(g, dec.components[i]).size();
            if (ei > cfg.large_interior) {
                large.push_back(static_cast<int>(i));
            } else {
                smalls.push_back(dec.components[i]);
                small_diam.push_back(diam[i]);
            }
        }

        double max_d = 0;
        int far_piece = -1;
        if (large.size() >= 2) {
            int v1 = dec.components[large[0]].ids.front();
            for (std::size_t t = 1; t < large.size(); ++t) {
                int vi = dec.components[large[t]].ids.front();
                double d = emb.distance2(v1, vi);
                if (d > max_d + 1e-15) {
                    max_d = d;
                    if (d > cfg.far_threshold) far_piece = large[t];
                }
            }
        }

        if (far_piece >= 0 && cf.ell >= 2) {
            ++rep.cut_branch_fires;
            family_dirty = true;
            const VertexSet& p1 = dec.components[large[0]];
            const VertexSet& p2 = dec.components[far_piece];
            EdgeSet k = find_separating_cut(g, p1, p2);
            if (static_cast<double>(k.size()) > cfg.m13) ++rep.soft_cut_bound_violations;
            RefineResult r = refine_set(g, cf, p, p1, p2, k);
            cf.levels[r.level].push_back(r.s);
            ledger.record(r.level);
            ++rep.insertions_per_level[r.level];
            VertexSet inside = p.set_intersection(r.s);
            VertexSet outside = p.set_difference(r.s);
            ensure(!inside.empty() && !outside.empty(), "refined set fails to split the component");
            self(self, inside);
            self(self, outside);
            return;
        }

        // Terminal: certify. Small pieces carry their own diameters; the
        // union of large pieces is certified through pairwise resistance
        // estimates routed through the first representative.
        double large_diam = 0;
        for (int idx : large) large_diam = std::max(large_diam, static_cast<double>(diam[idx]));
        double cert_l = large.size() <= 1 ? large_diam : 2.0 * large_diam + 4.0 * max_d;
        for (std::size_t i = 0; i < smalls.size(); ++i)
            for (int v : smalls[i]) vertex_cert[v] = small_diam[i];
        for (int idx : large)
            for (int v : dec.components[idx]) vertex_cert[v] = cert_l;
        add_small_pieces(p, smalls);
        for (int v : p) seen[v] = 1;
    };

    Overlay ov = build_overlay(cf, g);
    for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        if (family_dirty) {
            ov = build_overlay(cf, g);
            family_dirty = false;
        }
        process(process, ov.components[ov.component_of[v]].vertices);
    }

    Overlay final_ov = build_overlay(cf, g);
    rep.component_certificates.clear();
    for (const auto& c : final_ov.components) {
        double cert = 0;
        for (int v : c.vertices) cert = std::max(cert, vertex_cert[v]);
        rep.component_certificates.push_back(cert);
        rep.max_certificate = std::max(rep.max_certificate, cert);
        if (cf.ell >= 2)
            ensure(cert <= cfg.gamma_star_effective + 1e-9,
                   "component certificate above the shattering budget");
    }
    auto validity = validate_covering_family(cf, g);
    ensure(validity.ok, "extended family invalid: " + validity.reason);
    return cf;
}

// Empirical boundedness: max over levels >= 1 of count_i/(m^{1/3} 2^i).
inline double observed_alpha(const CoveringFamily& cf, const Multigraph& g) {
    auto counts = i_based_boundary_counts(cf, g);
    double m13 = std::cbrt(static_cast<double>(cf.m_original));
    double alpha = 0;
    for (int i = 1; i <= cf.ell; ++i)
        alpha = std::max(alpha, static_cast<double>(counts[i]) / (m13 * std::pow(2.0, i)));
    return alpha;
}

}  // namespace ust
