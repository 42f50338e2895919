// Acceptance battery: every statistical and structural guarantee the
// toolkit makes, each checked at its stated tolerance and reported as one
// PASS/FAIL line. Exits nonzero when any criterion fails but always runs
// all of them.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "ust/ball_growing.hpp"
#include "ust/covering_family.hpp"
#include "ust/exact_oracle.hpp"
#include "ust/generators.hpp"
#include "ust/laplacian.hpp"
#include "ust/marginal_sampling.hpp"
#include "ust/min_cut.hpp"
#include "ust/random_walk.hpp"
#include "ust/resistance_embedding.hpp"
#include "ust/shattering.hpp"
#include "ust/shortcut_sampler.hpp"
#include "ust/spanning_tree_sampler.hpp"
#include "ust/statistics.hpp"

using namespace ust;

namespace {

bool g_contract_seen = false;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

template <class F>
Outcome guarded(F&& f) {
    try {
        return f();
    } catch (const ContractViolation& e) {
        g_contract_seen = true;
        return {false, std::string("contract violation: ") + e.what()};
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

VertexSet whole(const Multigraph& g) {
    std::vector<int> v(g.vertex_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
    return VertexSet(std::move(v));
}

EdgeSet sample_tree(const Multigraph& g, int algo, std::uint64_t seed) {
    if (algo == 0) {
        Rng r(seed);
        return aldous_broder(g, r);
    }
    if (algo == 1) {
        Rng r(seed);
        return wilson(g, r);
    }
    SampleOptions opts;
    opts.algo = Algo::mst_fast;
    opts.seed = seed;
    opts.bailout_edges = 0;   // exercise the full pipeline even on tiny graphs
    opts.embed_c = 0.5;
    return sample_spanning_tree(g, opts).tree;
}

// Criteria 1 and 2 share one sampling pass per fixture and algorithm.
void uniformity_and_marginals(Outcome& uni, Outcome& marg) {
    struct Fix {
        const char* name;
        Multigraph g;
    };
    std::vector<Fix> fixtures;
    fixtures.push_back({"K4", complete_graph(4)});
    fixtures.push_back({"C5", cycle_graph(5)});
    fixtures.push_back({"K4-e", complete_graph_minus_edge(4)});
    fixtures.push_back({"grid3x3", grid_graph(3, 3)});
    fixtures.push_back({"bridged-triangles", two_triangles_bridge()});
    const int N = 50000;
    const char* algos[] = {"aldous-broder", "wilson", "mst-fast"};

    uni.pass = marg.pass = true;
    double min_p = 1.0, worst_excess = -1.0;
    std::string uni_bad, marg_bad;

    for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
        const Multigraph& g = fixtures[fi].g;
        TreeCatalog cat = enumerate_spanning_trees(g);
        std::vector<double> exact_p(g.edge_id_space(), 0.0);
        for (int e : g.live_edges())
            exact_p[e] = exact_edge_inclusion(g, e).convert_to<double>();

        for (int a = 0; a < 3; ++a) {
            std::vector<long long> counts(cat.size(), 0);
            std::vector<long long> incl(g.edge_id_space(), 0);
            Rng master(9000 + 10 * static_cast<std::uint64_t>(fi) + a);
            for (int t = 0; t < N; ++t) {
                EdgeSet tree = sample_tree(g, a, master.derive("t", t).u64());
                ++counts[cat.index(tree.ids)];
                for (int e : tree) ++incl[e];
            }
            auto chi = chi_square_uniform(counts);
            if (chi.p_value < min_p) min_p = chi.p_value;
            if (chi.p_value <= 1e-3) {
                uni.pass = false;
                uni_bad = std::string(fixtures[fi].name) + "/" + algos[a];
            }
            for (int e : g.live_edges()) {
                double p = exact_p[e];
                double freq = static_cast<double>(incl[e]) / N;
                double band = 4.0 * std::sqrt(std::max(p * (1 - p), 0.0) / N);
                double excess = std::fabs(freq - p) - band;
                if (excess > worst_excess) worst_excess = excess;
                if (excess > 0) {
                    marg.pass = false;
                    marg_bad = std::string(fixtures[fi].name) + "/" + algos[a] + " edge " +
                               std::to_string(e);
                }
            }
        }
    }
    uni.detail = "5 fixtures x 3 algorithms, N=50000, min p=" + num(min_p) +
                 (uni.pass ? "" : ", first failure " + uni_bad);
    marg.detail = "all edges within 4 sigma, worst excess=" + num(worst_excess) +
                  (marg.pass ? "" : ", first failure " + marg_bad);
}

Outcome restricted_marginal() {
    Multigraph g = path_with_pendant_triangle();
    CoveringFamily cf = CoveringFamily::trivial(g);
    cf.levels[1].push_back(VertexSet::of({0, 1, 2, 3, 4}));
    ensure(validate_covering_family(cf, g).ok, "hand family invalid");
    Overlay ov = build_overlay(cf, g);
    MinimumAgeInterior mai = minimum_age_interior(ov, g);
    ensure(mai.r_star == 0 && mai.f_star.size() == 3, "fixture interior not the triangle");

    // Exact subset distribution from the enumerated trees.
    auto mask_of = [&](const std::vector<int>& edges) {
        int mask = 0;
        for (int e : edges)
            for (std::size_t j = 0; j < mai.f_star.ids.size(); ++j)
                if (mai.f_star.ids[j] == e) mask |= 1 << j;
        return mask;
    };
    TreeCatalog cat = enumerate_spanning_trees(g);
    std::vector<double> probs(8, 0.0);
    for (const auto& t : cat.trees) probs[mask_of(t)] += 1.0 / static_cast<double>(cat.size());

    const int N = 50000;
    std::vector<long long> counts(8, 0);
    Rng master(30001);
    for (int t = 0; t < N; ++t) {
        Rng r = master.derive("t", t);
        MarginalResult res = sample_marginal(g, cf, ov, mai, r);
        ++counts[mask_of(res.f_prime.ids)];
    }

    for (int mask = 0; mask < 8; ++mask)
        if (probs[mask] == 0.0 && counts[mask] != 0)
            return {false, "impossible subset " + std::to_string(mask) + " sampled " +
                               std::to_string(counts[mask]) + " times"};
    std::vector<long long> live_counts;
    std::vector<double> live_probs;
    for (int mask = 0; mask < 8; ++mask)
        if (probs[mask] > 0) {
            live_counts.push_back(counts[mask]);
            live_probs.push_back(probs[mask]);
        }
    auto chi = chi_square_against(live_counts, live_probs);
    return {chi.p_value > 1e-3, std::to_string(live_counts.size()) +
                                    " reachable subsets of 8, N=50000, p=" + num(chi.p_value)};
}

Outcome embedding_band() {
    Rng gen(40001);
    Multigraph g = random_connected_graph(1000, 3000, gen);
    ResistanceEmbedding emb = build_resistance_embedding(g, 0.5, 40002);
    Rng pick(40003);
    const int pairs = 1000;
    int in_band = 0;
    for (int i = 0; i < pairs; ++i) {
        int u = static_cast<int>(pick.below(1000));
        int v = static_cast<int>(pick.below(1000));
        if (u == v) v = (v + 1) % 1000;
        double exact = effective_resistance(g, u, v, 1e-8);
        double est = emb.distance2(u, v);
        if (est >= (2.0 / 3.0) * exact - 1e-12 && est <= 2.0 * exact + 1e-12) ++in_band;
    }
    return {in_band >= 990, std::to_string(in_band) + "/1000 pairs within [2/3 R, 2 R], dim=" +
                                std::to_string(emb.coords.cols())};
}

Outcome decomposition_contract() {
    Rng rng(50001);
    int graphs = 0, checks = 0;
    for (int i = 0; i < 100; ++i) {
        int n = i % 10 == 9 ? 1500 + static_cast<int>(rng.below(501))
                            : 30 + static_cast<int>(rng.below(1471));
        long long m = n - 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(2 * n)));
        Rng gr = rng.derive("g", i);
        Multigraph g = random_connected_graph(n, std::max<long long>(m, n), gr);
        VertexSet all = whole(g);
        ++graphs;
        for (double phi : {0.3, 0.1, 0.03}) {
            Decomposition dec = ball_grow(g, all, phi);
            auto chk = verify_decomposition(g, all, dec);
            if (!chk.ok)
                return {false, "violated at n=" + std::to_string(n) + " phi=" + num(phi) +
                                   " (diameter " + num(chk.max_diameter) + "/" +
                                   num(chk.diameter_bound) + ", cut " + num(double(chk.cut_edges)) +
                                   "/" + num(chk.cut_bound) + ")"};
            ++checks;
        }
    }
    return {true, std::to_string(graphs) + " graphs x 3 phi values, " + std::to_string(checks) +
                      " decompositions exact"};
}

Outcome far_pair_cut_bound() {
    Rng rng(60001);
    Rational worst_slack = -1;
    for (int i = 0; i < 50; ++i) {
        int paths = i % 5 == 4 ? 2 : 1;
        // Block edge count must fit a simple graph: 2b + (b-1) <= b(b-1)/2
        // needs b >= 7.
        int b = paths == 1 ? 8 + static_cast<int>(rng.below(7)) : 7 + static_cast<int>(rng.below(2));
        long long bm = 2 * b + static_cast<long long>(rng.below(static_cast<std::uint64_t>(b)));
        int len = paths == 1 ? 36 + static_cast<int>(rng.below(12))
                             : 32 + static_cast<int>(rng.below(8));
        Rng gr = rng.derive("f", i);
        auto fix = far_pair_fixture(b, bm, paths, len, gr);
        const Multigraph& g = fix.graph;

        auto R = exact_all_resistances(g);
        auto diam_r = [&](const VertexSet& s) {
            Rational d = 0;
            for (std::size_t x = 0; x < s.ids.size(); ++x)
                for (std::size_t y = x + 1; y < s.ids.size(); ++y)
                    d = std::max(d, R[s.ids[x]][s.ids[y]]);
            return d;
        };
        Rational du = diam_r(fix.left_block), dw = diam_r(fix.right_block);
        Rational gamma = 0;
        for (int u : fix.left_block)
            for (int w : fix.right_block) gamma = std::max(gamma, Rational(R[u][w] / 3 - du - dw));
        if (gamma <= 0)
            return {false, "instance " + std::to_string(i) + " has nonpositive separation value"};

        auto cut = min_cut_between(g, fix.left_block, fix.right_block);
        Rational lhs = Rational(cut.value) * Rational(cut.value) * gamma;
        Rational m(g.live_edge_count());
        if (lhs > m)
            return {false, "instance " + std::to_string(i) + " cut " +
                               std::to_string(cut.value) + " breaks |K|^2 gamma <= m"};
        Rational slack = lhs / m;
        if (slack > worst_slack) worst_slack = slack;
    }
    return {true, "50 instances, max |K|^2 gamma / m = " + num(worst_slack.convert_to<double>())};
}

Outcome refinement_contract() {
    Rng rng(70001);
    for (int i = 0; i < 30; ++i) {
        int paths = 1 + i % 2;
        long long bm = 180 + static_cast<long long>(rng.below(60));
        int len = 250 + static_cast<int>(rng.below(70));
        Rng gr = rng.derive("f", i);
        auto fix = far_pair_fixture(60, bm, paths, len, gr);
        const Multigraph& g = fix.graph;
        long long m = g.live_edge_count();
        CoveringFamily cf = CoveringFamily::trivial(g);
        ensure(cf.ell >= 2, "fixture too small for refinement");
        VertexSet p = whole(g);
        EdgeSet k = find_separating_cut(g, fix.left_block, fix.right_block);

        RefineResult res = refine_set(g, cf, p, fix.left_block, fix.right_block, k);
        std::string tag = " (instance " + std::to_string(i) + ")";
        if (!(res.level > 0 && res.level < cf.ell)) return {false, "level out of range" + tag};
        long long es = interior(g, res.s).size();
        if (!(es > (m >> (res.level + 1)) && es <= (m >> res.level)))
            return {false, "interior outside the band" + tag};
        for (const auto& s : cf.levels[res.level])
            if (!res.s.set_intersection(s).empty()) return {false, "level overlap" + tag};
        bool keeps_left = fix.left_block.set_difference(res.s).empty();
        bool keeps_right = fix.right_block.set_difference(res.s).empty();
        if (keeps_left == keeps_right) return {false, "piece containment wrong" + tag};
        const VertexSet& dropped = keeps_left ? fix.right_block : fix.left_block;
        if (!res.s.set_intersection(dropped).empty())
            return {false, "refined set touches the far piece" + tag};
        std::vector<char> in_k(g.edge_id_space(), 0);
        for (int e : k) in_k[e] = 1;
        for (int e : boundary(g, res.s))
            if (!in_k[e]) return {false, "unaccounted boundary edge" + tag};
    }
    return {true, "30 instances, all five conditions re-verified externally"};
}

// One fully logged pipeline run; returns accumulated per-level insertions
// and checks the iteration bound.
bool logged_run(const Multigraph& g, double embed_c, std::uint64_t seed, std::string* why) {
    SampleOptions opts;
    opts.algo = Algo::mst_fast;
    opts.seed = seed;
    opts.bailout_edges = 0;
    opts.embed_c = embed_c;
    opts.collect_log = true;
    SampleResult res = sample_spanning_tree(g, opts);
    int ell = CoveringFamily::level_count_for(g.live_edge_count());
    if (static_cast<int>(res.log.size()) > ell + 1) {
        *why = "log has " + std::to_string(res.log.size()) + " rounds, bound " +
               std::to_string(ell + 1);
        return false;
    }
    std::vector<long long> per_level(ell + 1, 0);
    int last_r = -1;
    for (const auto& rec : res.log) {
        int r = rec["r_star"].get<int>();
        if (r <= last_r) {
            *why = "round ages did not increase";
            return false;
        }
        last_r = r;
        auto ins = rec["insertions_per_level"].get<std::vector<long long>>();
        for (std::size_t i = 0; i < ins.size() && i < per_level.size(); ++i)
            per_level[i] += ins[i];
    }
    for (int i = 1; i < ell; ++i)
        if (per_level[i] >= (1LL << (i + 1))) {
            *why = "level " + std::to_string(i) + " received " + std::to_string(per_level[i]) +
                   " insertions";
            return false;
        }
    return true;
}

Outcome insertion_and_iteration_budgets() {
    std::string why;
    int runs = 0;
    for (std::uint64_t s : {81, 82}) {
        Rng gr(700 + s);
        auto fix = far_pair_fixture(60, 200, 1, 250, gr);
        if (!logged_run(fix.graph, 4.0, s, &why))
            return {false, "far-pair run " + std::to_string(s) + ": " + why};
        ++runs;
    }
    for (std::uint64_t s : {83, 84}) {
        Rng gr(800 + s);
        Dumbbell db = dumbbell_graph(512, gr);
        if (!logged_run(db.graph, 0.5, s, &why))
            return {false, "dumbbell run " + std::to_string(s) + ": " + why};
        ++runs;
    }
    if (g_contract_seen) return {false, "a contract violation surfaced earlier in the battery"};
    return {true, std::to_string(runs) +
                      " logged runs within budgets; no contract violations anywhere"};
}

// Replays the pipeline with every conditioning postcondition recomputed
// from scratch rather than trusted.
bool conditioned_pipeline(const Multigraph& g0, double embed_c, std::uint64_t seed, int* rounds,
                          std::string* why) {
    Multigraph work = g0;
    CoveringFamily cf = CoveringFamily::trivial(work);
    InsertionLedger ledger(cf.ell);
    Rng master(seed);
    int iter = 0, last_r = -1;
    while (true) {
        if (work.vertex_count() == 1) break;
        auto low = lowest_boundary_level(cf, work);
        bool all_boundary = true;
        for (int e : work.live_edges())
            if (low[e] < 1) {
                all_boundary = false;
                break;
            }
        if (all_boundary) break;
        if (iter > cf.ell + 1) {
            *why = "iteration bound exceeded";
            return false;
        }
        ResistanceEmbedding emb = build_resistance_embedding(
            work, 0.5, master.derive("e", iter).u64(), embed_c, 1e-5);
        cf = extend_to_shattering(work, cf, emb, ledger);
        Overlay ov = build_overlay(cf, work);
        MinimumAgeInterior mai = minimum_age_interior(ov, work);
        if (mai.r_star <= last_r) {
            *why = "age failed to increase";
            return false;
        }
        last_r = mai.r_star;
        Rng wr = master.derive("w", iter);
        MarginalResult res = sample_marginal(work, cf, ov, mai, wr);

        auto before = i_based_boundary_counts(cf, work);
        auto out = condition_family(work, cf, ov, mai, res.f_prime);
        auto after = i_based_boundary_counts(out.family, out.graph);
        for (int i = 1; i <= cf.ell; ++i)
            if (before[i] != after[i]) {
                *why = "level " + std::to_string(i) + " boundary count changed";
                return false;
            }
        if (mai.r_star < cf.ell) {
            Overlay nov = build_overlay(out.family, out.graph);
            int mn = out.family.ell;
            for (const auto& c : nov.components) mn = std::min(mn, c.age);
            if (mn < mai.r_star + 1) {
                *why = "minimum age " + std::to_string(mn) + " after finishing age " +
                       std::to_string(mai.r_star);
                return false;
            }
        } else {
            auto lw = lowest_boundary_level(out.family, out.graph);
            for (int e : out.graph.live_edges())
                if (lw[e] < 1) {
                    *why = "interior edge survived the deepest conditioning";
                    return false;
                }
        }
        ++*rounds;
        work = std::move(out.graph);
        cf = std::move(out.family);
        ++iter;
    }
    return true;
}

Outcome conditioning_progress() {
    int rounds = 0;
    std::string why;
    for (std::uint64_t s : {1, 2}) {
        Rng gr(910 + s);
        auto fix = far_pair_fixture(60, 200, 1, 250, gr);
        if (!conditioned_pipeline(fix.graph, 4.0, s, &rounds, &why))
            return {false, "far pair seed " + std::to_string(s) + ": " + why};
    }
    for (std::uint64_t s : {3, 4, 5}) {
        if (!conditioned_pipeline(grid_graph(6, 6), 0.5, s, &rounds, &why))
            return {false, "grid seed " + std::to_string(s) + ": " + why};
        if (!conditioned_pipeline(path_with_pendant_triangle(), 0.5, s, &rounds, &why))
            return {false, "pendant host seed " + std::to_string(s) + ": " + why};
    }
    return {true, std::to_string(rounds) + " conditioning rounds re-verified externally"};
}

Outcome exit_sampler_fidelity() {
    // Exact agreement on small graphs.
    struct Small {
        Multigraph g;
        VertexSet s;
    };
    std::vector<Small> smalls;
    smalls.push_back({complete_graph(5), VertexSet::of({0, 1, 2})});
    smalls.push_back({two_triangles_bridge(), VertexSet::of({0, 1, 2, 3})});
    smalls.push_back({grid_graph(2, 4), VertexSet::of({0, 1, 2, 4, 5})});
    smalls.push_back({cycle_graph(6), VertexSet::of({0, 1, 3, 4})});
    double worst_err = 0;
    for (auto& sm : smalls) {
        auto exact = exact_exit_distributions(sm.g, sm.s);
        ShortcutSampler sampler(sm.g, sm.s, 1e-10);
        for (std::size_t i = 0; i < sm.s.ids.size(); ++i)
            for (auto [e, p] : sampler.exit_distribution(sm.s.ids[i])) {
                auto it = exact[i].find(e);
                double want = it == exact[i].end() ? 0.0 : it->second.convert_to<double>();
                worst_err = std::max(worst_err, std::fabs(p - want));
            }
    }
    if (worst_err > 1e-9)
        return {false, "exact-case probability error " + num(worst_err) + " above 1e-9"};

    // Distributional agreement with faithful simulation.
    Rng gen(100001);
    Multigraph g = random_connected_graph(30, 60, gen);
    Rng setpick(100002);
    const int N = 100000;
    double worst_tv = 0;
    for (int k = 0; k < 10; ++k) {
        int size = 4 + static_cast<int>(setpick.below(9));
        std::vector<int> perm(30);
        for (int v = 0; v < 30; ++v) perm[v] = v;
        for (int v = 29; v > 0; --v)
            std::swap(perm[v], perm[setpick.below(static_cast<std::uint64_t>(v + 1))]);
        perm.resize(size);
        VertexSet s(std::move(perm));
        ShortcutSampler sampler(g, s, 1e-8);
        EdgeSet bed = boundary(g, s);
        std::map<int, int> cell;
        for (std::size_t i = 0; i < bed.ids.size(); ++i) cell[bed.ids[i]] = static_cast<int>(i);
        int entries[2] = {s.ids.front(), s.ids[s.ids.size() / 2]};
        for (int entry : entries) {
            std::vector<long long> a(bed.size(), 0), b(bed.size(), 0);
            Rng ra(3000 + 7 * k + entry), rb(5000 + 11 * k + entry);
            for (int t = 0; t < N; ++t) {
                ++a[cell.at(sampler.sample_exit(entry, ra))];
                int v = entry;
                int exit_edge = -1;
                while (exit_edge < 0) {
                    Incidence inc = walk_step(g, v, rb);
                    if (!s.contains(inc.to))
                        exit_edge = inc.edge;
                    else
                        v = inc.to;
                }
                ++b[cell.at(exit_edge)];
            }
            double tv = total_variation(a, b);
            worst_tv = std::max(worst_tv, tv);
            if (tv > 0.02)
                return {false, "set " + std::to_string(k) + " entry " + std::to_string(entry) +
                                   " TV " + num(tv) + " above 0.02"};
        }
    }
    return {true, "exact error " + num(worst_err) + " <= 1e-9; worst TV over 10 sets x 2 entries = " +
                      num(worst_tv)};
}

Eigen::MatrixXd laplacian_pinv(const Multigraph& g) {
    int n = g.vertex_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        L(a, a) += 1;
        L(b, b) += 1;
        L(a, b) -= 1;
        L(b, a) -= 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    Eigen::VectorXd inv = es.eigenvalues();
    for (int i = 0; i < n; ++i) inv[i] = inv[i] > 1e-9 ? 1.0 / inv[i] : 0.0;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Outcome traversal_and_cover_bounds() {
    Rng rng(110001);
    double worst_ratio = 0, worst_margin = 1e300;
    for (int inst = 0; inst < 20; ++inst) {
        int n = 60 + static_cast<int>(rng.below(61));
        long long m = 2LL * n + static_cast<long long>(rng.below(static_cast<std::uint64_t>(n)));
        Rng gr = rng.derive("g", inst);
        Multigraph g = random_connected_graph(n, m, gr);
        m = g.live_edge_count();
        Eigen::MatrixXd P = laplacian_pinv(g);
        auto reff = [&](int u, int v) { return P(u, u) + P(v, v) - 2 * P(u, v); };

        // Subgraph: a two-step ball, capped.
        int root = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        std::vector<int> dist(n, -1), order;
        dist[root] = 0;
        order.push_back(root);
        for (std::size_t h = 0; h < order.size(); ++h) {
            int v = order[h];
            if (dist[v] == 2) continue;
            for (const auto& inc : g.incident(v))
                if (dist[inc.to] < 0) {
                    dist[inc.to] = dist[v] + 1;
                    order.push_back(inc.to);
                }
        }
        if (order.size() > 20) order.resize(20);
        VertexSet vp(std::move(order));
        EdgeSet ep = interior(g, vp);
        ensure(!ep.empty(), "subgraph has no interior edges");
        double gamma_vp = 0;
        for (std::size_t x = 0; x < vp.ids.size(); ++x)
            for (std::size_t y = x + 1; y < vp.ids.size(); ++y)
                gamma_vp = std::max(gamma_vp, reff(vp.ids[x], vp.ids[y]));
        double bound = 16.0 * static_cast<double>(ep.size()) * gamma_vp * std::log(double(n));

        std::vector<char> in_ep(g.edge_id_space(), 0);
        for (int e : ep) in_ep[e] = 1;
        std::vector<char> in_vp(n, 0);
        for (int v : vp) in_vp[v] = 1;

        const int trials = 200;
        double total_traversals = 0;
        Rng walk_rng = rng.derive("walk", inst);
        for (int t = 0; t < trials; ++t) {
            int v = static_cast<int>(walk_rng.below(static_cast<std::uint64_t>(n)));
            std::vector<char> seen(n, 0);
            int left = static_cast<int>(vp.size());
            if (in_vp[v]) {
                seen[v] = 1;
                --left;
            }
            long long trav = 0;
            while (left > 0) {
                Incidence inc = walk_step(g, v, walk_rng);
                if (in_ep[inc.edge]) ++trav;
                v = inc.to;
                if (in_vp[v] && !seen[v]) {
                    seen[v] = 1;
                    --left;
                }
            }
            total_traversals += static_cast<double>(trav);
        }
        double mean_trav = total_traversals / trials;
        worst_ratio = std::max(worst_ratio, mean_trav / bound);
        if (mean_trav > bound)
            return {false, "instance " + std::to_string(inst) + " mean traversals " +
                               num(mean_trav) + " exceed bound " + num(bound)};

        // Cover-time lower bound from the worst endpoint of the widest pair.
        double gamma_g = 0;
        int bu = 0, bv = 1;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (reff(u, v) > gamma_g) {
                    gamma_g = reff(u, v);
                    bu = u;
                    bv = v;
                }
        double best_mean = 0, best_se = 0;
        for (int endpoint : {bu, bv}) {
            std::vector<double> covers;
            Rng cr = rng.derive("cover", inst * 2 + (endpoint == bv));
            for (int t = 0; t < trials; ++t)
                covers.push_back(static_cast<double>(cover_time_from(g, endpoint, cr)));
            auto ms = mean_stderr(covers);
            if (ms.mean > best_mean) {
                best_mean = ms.mean;
                best_se = ms.stderr_;
            }
        }
        double floor_bound = static_cast<double>(m) * gamma_g - 3.0 * best_se;
        worst_margin = std::min(worst_margin, best_mean - floor_bound);
        if (best_mean < floor_bound)
            return {false, "instance " + std::to_string(inst) + " mean cover " + num(best_mean) +
                               " below floor " + num(floor_bound)};
    }
    return {true, "20 instances; max traversal ratio=" + num(worst_ratio) +
                      ", min cover margin=" + num(worst_margin)};
}

Outcome events_vs_covering_walk() {
    std::string detail;
    bool pass = true;
    for (int n : {2048, 4096}) {
        Rng gr(120000 + n);
        Dumbbell db = dumbbell_graph(n, gr);
        const Multigraph& g = db.graph;

        double ab_steps = 0;
        for (int i = 0; i < 3; ++i) {
            Rng r(130000 + n + i);
            WalkStats st;
            aldous_broder(g, r, 0, &st);
            ab_steps += static_cast<double>(st.steps);
        }
        ab_steps /= 3;

        double events = 0;
        for (int i = 0; i < 3; ++i) {
            SampleOptions opts;
            opts.algo = Algo::mst_fast;
            opts.seed = 140000 + n + i;
            opts.embed_c = 0.5;
            SampleResult res = sample_spanning_tree(g, opts);
            events += static_cast<double>(res.faithful_steps + res.jumps);
        }
        events /= 3;

        if (!detail.empty()) detail += "; ";
        detail += "n=" + std::to_string(n) + ": events " + num(events) + " vs walk " +
                  num(ab_steps) + " (ratio " + num(events / ab_steps) + ")";
        if (events > 0.5 * ab_steps) pass = false;
    }
    return {pass, detail};
}

void report(int id, const char* name, const Outcome& o, double seconds) {
    std::printf("%s  criterion %2d  %-34s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    int failures = 0;
    auto timed = [&](int id, const char* name, auto&& fn) {
        auto t0 = clock::now();
        Outcome o = guarded(fn);
        double s = std::chrono::duration<double>(clock::now() - t0).count();
        report(id, name, o, s);
        if (!o.pass) ++failures;
    };

    {
        auto t0 = clock::now();
        Outcome uni, marg;
        try {
            uniformity_and_marginals(uni, marg);
        } catch (const ContractViolation& e) {
            g_contract_seen = true;
            uni = marg = {false, std::string("contract violation: ") + e.what()};
        } catch (const std::exception& e) {
            uni = marg = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(clock::now() - t0).count();
        report(1, "sampler uniformity", uni, s);
        report(2, "edge marginal identity", marg, 0.0);
        failures += !uni.pass + !marg.pass;
    }

    timed(3, "restricted marginal exactness", restricted_marginal);
    timed(4, "resistance embedding band", embedding_band);
    timed(5, "decomposition contract", decomposition_contract);
    timed(6, "far-pair cut bound", far_pair_cut_bound);
    timed(7, "set refinement contract", refinement_contract);
    timed(8, "insertion and iteration budgets", insertion_and_iteration_budgets);
    timed(9, "conditioning progress", conditioning_progress);
    timed(10, "exit sampler fidelity", exit_sampler_fidelity);
    timed(11, "traversal and cover bounds", traversal_and_cover_bounds);
    timed(12, "events vs covering walk", events_vs_covering_walk);

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
