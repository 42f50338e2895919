#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "ust/exact_oracle.hpp"
#include "ust/generators.hpp"
#include "ust/marginal_sampling.hpp"
#include "ust/statistics.hpp"

using namespace ust;

TEST_CASE("first visit restriction keeps only first-entry edges") {
    Multigraph g = cycle_graph(4);
    std::vector<int> fv = {-1, 0, 1, 3};  // walk 0 -> 1 -> 2, then 3 entered via edge 3
    EdgeSet all = EdgeSet::of({0, 1, 2, 3});
    EdgeSet kept = first_visit_restriction(g, all, fv);
    REQUIRE(kept.ids == std::vector<int>{0, 1, 3});
    EdgeSet none = first_visit_restriction(g, EdgeSet::of({2}), fv);
    REQUIRE(none.empty());
}

TEST_CASE("empty minimum-age interior yields an empty restriction") {
    Multigraph g = cycle_graph(3);
    CoveringFamily cf;
    cf.ell = 1;
    cf.m_original = 64;
    cf.levels.assign(2, {});
    cf.levels[0].push_back(VertexSet::of({0, 1, 2}));
    cf.levels[1].push_back(VertexSet::of({0}));
    cf.levels[1].push_back(VertexSet::of({1}));
    Overlay ov = build_overlay(cf, g);
    MinimumAgeInterior mai = minimum_age_interior(ov, g);
    REQUIRE(mai.r_star == 0);
    REQUIRE(mai.f_star.empty());  // the lone age-0 vertex has no interior edge

    Rng rng(1);
    MarginalResult res = sample_marginal(g, cf, ov, mai, rng);
    REQUIRE(res.f_prime.empty());
    REQUIRE(res.stats.faithful_steps == 0);
    REQUIRE(res.stats.samplers_built == 0);
}

static std::tuple<CoveringFamily, Overlay, MinimumAgeInterior> pendant_triangle_setup(
    const Multigraph& g) {
    CoveringFamily cf;
    cf.ell = 1;
    cf.m_original = 64;
    cf.levels.assign(2, {});
    std::vector<int> all(g.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    cf.levels[0].push_back(VertexSet(std::move(all)));
    cf.levels[1].push_back(VertexSet::of({0, 1, 2, 3, 4}));
    Overlay ov = build_overlay(cf, g);
    MinimumAgeInterior mai = minimum_age_interior(ov, g);
    return {std::move(cf), std::move(ov), std::move(mai)};
}

TEST_CASE("restricted marginal matches the enumerated tree marginal") {
    Multigraph g = path_with_pendant_triangle();
    auto [cf, ov, mai] = pendant_triangle_setup(g);
    REQUIRE(mai.r_star == 0);
    REQUIRE(mai.f_star.size() == 3);

    // Every spanning tree holds exactly two of the three triangle edges, so
    // the restriction is one of three equally likely 2-subsets.
    TreeCatalog cat = enumerate_spanning_trees(g);
    REQUIRE(cat.size() == 3);
    std::map<std::vector<int>, int> subset_cell;
    for (const auto& t : cat.trees) {
        std::vector<int> inter;
        for (int e : t)
            if (mai.f_star.contains(e)) inter.push_back(e);
        REQUIRE(inter.size() == 2);
        subset_cell.emplace(inter, static_cast<int>(subset_cell.size()));
    }
    REQUIRE(subset_cell.size() == 3);

    const int n = 20000;
    std::vector<long long> counts(3, 0);
    Rng master(2026);
    for (int i = 0; i < n; ++i) {
        Rng rng = master.derive("run", i);
        MarginalResult res = sample_marginal(g, cf, ov, mai, rng);
        auto it = subset_cell.find(res.f_prime.ids);
        REQUIRE(it != subset_cell.end());  // never fewer nor the full triangle
        ++counts[it->second];
    }
    auto chi = chi_square_against(counts, std::vector<double>(3, 1.0 / 3.0));
    CAPTURE(counts, chi.statistic);
    REQUIRE(chi.p_value > 1e-3);
}

TEST_CASE("marginal walk statistics and determinism") {
    Multigraph g = path_with_pendant_triangle();
    auto [cf, ov, mai] = pendant_triangle_setup(g);

    Rng a(7), b(7), c(8);
    MarginalResult ra = sample_marginal(g, cf, ov, mai, a);
    MarginalResult rb = sample_marginal(g, cf, ov, mai, b);
    REQUIRE(ra.f_prime.ids == rb.f_prime.ids);
    REQUIRE(ra.stats.faithful_steps == rb.stats.faithful_steps);

    auto j = ra.stats.to_json();
    std::set<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
    REQUIRE(keys == std::set<std::string>{"faithful_steps", "jumps_over_escape", "jumps_over_F",
                                          "samplers_built", "solver_iterations"});
    REQUIRE(ra.stats.faithful_steps > 0);

    bool diverged = false;
    for (int i = 0; i < 8 && !diverged; ++i) {
        Rng c1(8 + i);
        diverged = sample_marginal(g, cf, ov, mai, c1).f_prime.ids != ra.f_prime.ids;
    }
    REQUIRE(diverged);
    (void)c;
}

TEST_CASE("witness jumps engage on older components") {
    // Age-1 components around an age-0 triangle: finishing the triangle
    // may require crossing the older blocks, which the walk must shortcut.
    Rng gen(31);
    Multigraph block = random_connected_graph(12, 30, gen);
    std::vector<std::pair<int, int>> e;
    for (int eid : block.live_edges()) e.emplace_back(block.endpoints(eid));
    // Triangle on fresh vertices 12,13,14 tied into the block at 0 and 6.
    e.emplace_back(0, 12);
    e.emplace_back(12, 13);
    e.emplace_back(13, 14);
    e.emplace_back(14, 12);
    e.emplace_back(13, 6);
    Multigraph g(15, e);

    CoveringFamily cf;
    cf.ell = 1;
    cf.m_original = 128;
    cf.levels.assign(2, {});
    std::vector<int> all(15);
    for (int i = 0; i < 15; ++i) all[i] = i;
    cf.levels[0].push_back(VertexSet(std::move(all)));
    cf.levels[1].push_back(VertexSet::of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}));
    Overlay ov = build_overlay(cf, g);
    MinimumAgeInterior mai = minimum_age_interior(ov, g);
    REQUIRE(mai.r_star == 0);
    REQUIRE(mai.f_star.size() == 3);

    long long jumps = 0;
    int full = 0;
    for (int i = 0; i < 40; ++i) {
        Rng rng(400 + i);
        MarginalResult res = sample_marginal(g, cf, ov, mai, rng);
        // Vertex 14 is always first reached over a triangle edge; vertex 13
        // may be first reached over a tie edge instead, dropping it from F'.
        REQUIRE(res.f_prime.size() >= 1);
        REQUIRE(res.f_prime.size() <= 2);
        full += res.f_prime.size() == 2;
        jumps += res.stats.jumps_over_escape;
    }
    REQUIRE(full > 0);
    REQUIRE(jumps > 0);  // walks that wander into the block return by jump
}
