#include <catch2/catch_amalgamated.hpp>

#include "ust/exact_oracle.hpp"
#include "ust/generators.hpp"
#include "ust/rng.hpp"
#include "ust/statistics.hpp"

using namespace ust;

TEST_CASE("spanning tree counts match closed forms") {
    REQUIRE(count_spanning_trees(path_graph(6)) == 1);
    REQUIRE(count_spanning_trees(cycle_graph(4)) == 4);
    REQUIRE(count_spanning_trees(cycle_graph(9)) == 9);
    REQUIRE(count_spanning_trees(complete_graph(4)) == 16);   // 4^2
    REQUIRE(count_spanning_trees(complete_graph(5)) == 125);  // 5^3
    REQUIRE(count_spanning_trees(complete_graph_minus_edge(4)) == 8);
    REQUIRE(count_spanning_trees(two_triangles_bridge()) == 9);
    REQUIRE(count_spanning_trees(path_with_pendant_triangle()) == 3);
    // Parallel edges double the count.
    REQUIRE(count_spanning_trees(Multigraph(2, {{0, 1}, {0, 1}})) == 2);
}

TEST_CASE("enumeration agrees with the determinant") {
    for (const Multigraph& g :
         {complete_graph(4), cycle_graph(5), two_triangles_bridge(), grid_graph(2, 3),
          path_with_pendant_triangle(), Multigraph(3, {{0, 1}, {0, 1}, {1, 2}})}) {
        TreeCatalog cat = enumerate_spanning_trees(g);
        REQUIRE(BigInt(cat.size()) == count_spanning_trees(g));
        for (const auto& t : cat.trees) REQUIRE(is_spanning_tree(g, EdgeSet(t)));
        for (std::size_t i = 0; i < cat.trees.size(); ++i)
            REQUIRE(cat.index(cat.trees[i]) == static_cast<int>(i));
    }
    REQUIRE_THROWS_AS(enumerate_spanning_trees(complete_graph(4), 10), ContractViolation);
}

TEST_CASE("exact resistances on hand fixtures") {
    REQUIRE(exact_resistance(path_graph(5), 0, 4) == Rational(4));
    REQUIRE(exact_resistance(Multigraph(2, {{0, 1}, {0, 1}}), 0, 1) == Rational(1, 2));
    REQUIRE(exact_resistance(cycle_graph(3), 0, 1) == Rational(2, 3));
    REQUIRE(exact_resistance(complete_graph(4), 0, 1) == Rational(1, 2));
    REQUIRE(exact_resistance(cycle_graph(6), 0, 3) == Rational(3 * 3, 6));
    REQUIRE(exact_edge_inclusion(path_graph(3), 0) == Rational(1));
}

TEST_CASE("edge inclusion probabilities sum to n minus 1") {
    for (const Multigraph& g : {complete_graph(4), cycle_graph(5), two_triangles_bridge(),
                                grid_graph(2, 3), complete_graph_minus_edge(4)}) {
        Rational total = 0;
        for (int e : g.live_edges()) total += exact_edge_inclusion(g, e);
        REQUIRE(total == Rational(g.vertex_count() - 1));
    }
}

TEST_CASE("all-pairs resistances match the single-pair solver") {
    Rng rng(11);
    Multigraph g = random_connected_graph(12, 24, rng);
    auto R = exact_all_resistances(g);
    for (int u = 0; u < 12; ++u)
        for (int v = u + 1; v < 12; v += 3) REQUIRE(R[u][v] == exact_resistance(g, u, v));
}

TEST_CASE("first-exit distributions: gambler's ruin and degree splits") {
    Multigraph p = path_graph(5);
    VertexSet s = VertexSet::of({1, 2, 3});
    auto exit = exact_exit_distributions(p, s);
    // boundary edges: 0=(0,1), 3=(3,4)
    REQUIRE(exit[1][0] == Rational(1, 2));  // start 2
    REQUIRE(exit[1][3] == Rational(1, 2));
    REQUIRE(exit[0][0] == Rational(3, 4));  // start 1
    REQUIRE(exit[0][3] == Rational(1, 4));

    // Singleton set: uniform over incident edges.
    Multigraph tri = cycle_graph(3);
    auto exit2 = exact_exit_distributions(tri, VertexSet::of({0}));
    REQUIRE(exit2[0][0] == Rational(1, 2));
    REQUIRE(exit2[0].size() == 2);

    // Probabilities over the boundary sum to one.
    Rng rng(3);
    Multigraph g = random_connected_graph(9, 16, rng);
    VertexSet sub = VertexSet::of({2, 3, 4, 5});
    auto exit3 = exact_exit_distributions(g, sub);
    for (const auto& dist : exit3) {
        Rational total = 0;
        for (const auto& [e, pr] : dist) total += pr;
        REQUIRE(total == Rational(1));
    }
}

TEST_CASE("chi-square fixtures") {
    auto perfect = chi_square_uniform({100, 100, 100, 100});
    REQUIRE(perfect.statistic == 0.0);
    REQUIRE(perfect.p_value == 1.0);

    auto lump = chi_square_uniform({400, 0, 0, 0});
    REQUIRE(lump.statistic == Catch::Approx(1200.0));
    REQUIRE(lump.p_value < 1e-12);

    REQUIRE_THROWS_AS(chi_square_against({1, 1}, {1.0, 0.0}), ContractViolation);
    REQUIRE_NOTHROW(chi_square_against({2, 0}, {1.0, 0.0}));
}

TEST_CASE("chi-square calibration on fair draws") {
    Rng rng(2024);
    int low_p = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<long long> counts(16, 0);
        for (int i = 0; i < 16000; ++i) ++counts[rng.index(16)];
        if (chi_square_uniform(counts).p_value <= 1e-3) ++low_p;
    }
    REQUIRE(low_p <= 3);  // expect ~0.2 false alarms
}

TEST_CASE("statistics helpers") {
    auto ms = mean_stderr({1.0, 2.0, 3.0, 4.0});
    REQUIRE(ms.mean == Catch::Approx(2.5));
    REQUIRE(ms.stderr_ == Catch::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    REQUIRE(total_variation({50, 50}, {50, 50}) == 0.0);
    REQUIRE(total_variation({100, 0}, {0, 100}) == Catch::Approx(1.0));
    REQUIRE(binomial_within(0.5, 0.5, 1000));
    REQUIRE_FALSE(binomial_within(0.9, 0.5, 1000));
}
