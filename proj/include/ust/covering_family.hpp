#pragma once

#include <climits>
#include <map>
#include <nlohmann/json.hpp>
#include <vector>

#include "ust/common.hpp"
#include "ust/multigraph.hpp"

namespace ust {

// Nested level structure over a graph's vertices: level 0 is {V}; each
// deeper level holds pairwise-disjoint sets whose interiors shrink
// geometrically (|interior| <= m/2^i against the frozen original edge
// count). Superimposing all levels partitions the vertices into overlay
// components whose "age" is the deepest level still covering them.
struct CoveringFamily {
    int ell = 0;              // deepest level index
    long long m_original = 0; // edge count the capacity bounds refer to
    std::vector<std::vector<VertexSet>> levels;

    static int level_count_for(long long m) {
        ensure(m >= 1, "covering family needs at least one edge");
        return ilog2_floor(m) / 3;
    }

    static CoveringFamily trivial(const Multigraph& g) {
        CoveringFamily cf;
        cf.m_original = g.live_edge_count();
        cf.ell = level_count_for(cf.m_original);
        cf.levels.assign(cf.ell + 1, {});
        std::vector<int> all(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
        cf.levels[0].push_back(VertexSet(std::move(all)));
        return cf;
    }

    // levels[i] capacity: |interior| * 2^i <= m_original (exact integers).
    bool level_capacity_ok(int level, long long interior_edges) const {
        return interior_edges <= (m_original >> level);
    }
};

// member_of[i][v] = index of the level-i set containing v, or -1.
inline std::vector<std::vector<int>> family_membership(const CoveringFamily& cf,
                                                       const Multigraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> member(cf.ell + 1, std::vector<int>(n, -1));
    for (int i = 0; i <= cf.ell; ++i)
        for (std::size_t s = 0; s < cf.levels[i].size(); ++s)
            for (int v : cf.levels[i][s]) {
                ensure(member[i][v] == -1, "family sets overlap within a level");
                member[i][v] = static_cast<int>(s);
            }
    return member;
}

struct OverlayComponent {
    VertexSet vertices;
    int age = 0;            // deepest level with a set containing the component
    int witness_level = 0;  // == age
    int witness_index = 0;  // index of that set within its level
};

struct Overlay {
    std::vector<OverlayComponent> components;
    std::vector<int> component_of;  // per vertex
};

namespace detail {

// Groups vertices by identical membership signatures across levels
// 0..depth. Two vertices share a component exactly when no considered set
// separates them. Component ids follow the order of their lowest vertex.
inline Overlay group_by_signature(const std::vector<std::vector<int>>& member, int depth, int n) {
    std::map<std::vector<int>, int> comp_ids;
    Overlay ov;
    ov.component_of.assign(n, -1);
    std::vector<std::vector<int>> verts;
    std::vector<int> sig(depth + 1);
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i <= depth; ++i) sig[i] = member[i][v];
        auto [it, fresh] = comp_ids.try_emplace(sig, static_cast<int>(verts.size()));
        if (fresh) verts.emplace_back();
        ov.component_of[v] = it->second;
        verts[it->second].push_back(v);
    }
    for (std::size_t c = 0; c < verts.size(); ++c) {
        OverlayComponent oc;
        oc.vertices = VertexSet(std::move(verts[c]));
        int v0 = oc.vertices.ids.front();
        oc.age = 0;
        for (int i = depth; i >= 0; --i)
            if (member[i][v0] >= 0) {
                oc.age = i;
                oc.witness_index = member[i][v0];
                break;
            }
        oc.witness_level = oc.age;
        ov.components.push_back(std::move(oc));
    }
    return ov;
}

}  // namespace detail

inline Overlay build_overlay(const CoveringFamily& cf, const Multigraph& g) {
    auto member = family_membership(cf, g);
    ensure(!cf.levels[0].empty() && cf.levels[0].size() == 1 &&
               cf.levels[0][0].size() == g.vertex_count(),
           "level 0 must be the full vertex set");
    return detail::group_by_signature(member, cf.ell, g.vertex_count());
}

struct LevelPartition {
    std::vector<VertexSet> components;
    std::vector<int> component_of;
    std::vector<char> modest;  // component lies inside some level-j set
};

// Overlay restricted to levels 0..j.
inline LevelPartition partition_level(const CoveringFamily& cf, const Multigraph& g, int j) {
    ensure(j >= 0 && j <= cf.ell, "partition level out of range");
    auto member = family_membership(cf, g);
    auto ov = detail::group_by_signature(member, j, g.vertex_count());
    LevelPartition lp;
    lp.component_of = std::move(ov.component_of);
    for (auto& c : ov.components) {
        int v0 = c.vertices.ids.front();
        lp.modest.push_back(member[j][v0] >= 0);
        lp.components.push_back(std::move(c.vertices));
    }
    return lp;
}

struct MinimumAgeInterior {
    int r_star = 0;
    std::vector<int> component_ids;  // overlay components of age r_star
    EdgeSet f_star;                  // union of their interiors
};

inline MinimumAgeInterior minimum_age_interior(const Overlay& ov, const Multigraph& g) {
    MinimumAgeInterior out;
    out.r_star = INT_MAX;
    for (const auto& c : ov.components) out.r_star = std::min(out.r_star, c.age);
    std::vector<char> min_age_comp(ov.components.size(), 0);
    for (std::size_t c = 0; c < ov.components.size(); ++c)
        if (ov.components[c].age == out.r_star) {
            out.component_ids.push_back(static_cast<int>(c));
            min_age_comp[c] = 1;
        }
    std::vector<int> edges;
    for (int e = 0; e < g.edge_id_space(); ++e) {
        if (!g.edge_alive(e)) continue;
        auto [a, b] = g.endpoints(e);
        int ca = ov.component_of[a];
        if (ca == ov.component_of[b] && min_age_comp[ca]) edges.push_back(e);
    }
    out.f_star = EdgeSet(std::move(edges));
    return out;
}

// Per live edge, the lowest level at which it crosses a set boundary
// (-1 if it crosses none). Level 0 never separates anything.
inline std::vector<int> lowest_boundary_level(const CoveringFamily& cf, const Multigraph& g) {
    auto member = family_membership(cf, g);
    std::vector<int> lvl(g.edge_id_space(), -1);
    for (int e = 0; e < g.edge_id_space(); ++e) {
        if (!g.edge_alive(e)) continue;
        auto [a, b] = g.endpoints(e);
        for (int i = 1; i <= cf.ell; ++i) {
            int sa = member[i][a], sb = member[i][b];
            if (sa != sb && (sa >= 0 || sb >= 0)) {
                lvl[e] = i;
                break;
            }
        }
    }
    return lvl;
}

inline std::vector<long long> i_based_boundary_counts(const CoveringFamily& cf,
                                                      const Multigraph& g) {
    auto lvl = lowest_boundary_level(cf, g);
    std::vector<long long> counts(cf.ell + 1, 0);
    for (int e = 0; e < g.edge_id_space(); ++e)
        if (g.edge_alive(e) && lvl[e] >= 0) ++counts[lvl[e]];
    return counts;
}

struct FamilyValidity {
    bool ok = true;
    std::string reason;
};

inline FamilyValidity validate_covering_family(const CoveringFamily& cf, const Multigraph& g) {
    FamilyValidity v;
    auto fail = [&](const std::string& r) {
        v.ok = false;
        if (v.reason.empty()) v.reason = r;
    };
    if (static_cast<int>(cf.levels.size()) != cf.ell + 1) fail("level count mismatch");
    if (cf.levels[0].size() != 1 || cf.levels[0][0].size() != g.vertex_count())
        fail("level 0 must be exactly {V}");
    for (int i = 0; i <= cf.ell && v.ok; ++i) {
        std::vector<char> seen(g.vertex_count(), 0);
        for (const auto& s : cf.levels[i]) {
            if (s.empty()) fail("empty set at level " + std::to_string(i));
            for (int x : s) {
                if (x < 0 || x >= g.vertex_count()) fail("vertex id out of range");
                else if (seen[x]) fail("overlapping sets at level " + std::to_string(i));
                else seen[x] = 1;
            }
            if (!cf.level_capacity_ok(i, interior(g, s).size()))
                fail("interior capacity exceeded at level " + std::to_string(i));
        }
    }
    return v;
}

inline nlohmann::json covering_family_to_json(const CoveringFamily& cf) {
    nlohmann::json j;
    j["ell"] = cf.ell;
    j["m_original"] = cf.m_original;
    j["levels"] = nlohmann::json::array();
    for (const auto& level : cf.levels) {
        nlohmann::json sets = nlohmann::json::array();
        for (const auto& s : level) sets.push_back(s.ids);
        j["levels"].push_back(std::move(sets));
    }
    return j;
}

inline CoveringFamily covering_family_from_json(const nlohmann::json& j) {
    CoveringFamily cf;
    cf.ell = j.at("ell").get<int>();
    cf.m_original = j.at("m_original").get<long long>();
    for (const auto& level : j.at("levels")) {
        std::vector<VertexSet> sets;
        for (const auto& s : level) sets.push_back(VertexSet(s.get<std::vector<int>>()));
        cf.levels.push_back(std::move(sets));
    }
    ensure(static_cast<int>(cf.levels.size()) == cf.ell + 1, "level count mismatch in JSON");
    return cf;
}

}  // namespace ust
