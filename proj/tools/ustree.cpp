// Command line front end: sample spanning trees, verify sampler output
// against exact ground truth, and benchmark the samplers on generated
// families. Exit codes: 0 ok, 1 failed check, 2 usage or I/O error.

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "ust/edge_list_io.hpp"
#include "ust/exact_oracle.hpp"
#include "ust/generators.hpp"
#include "ust/laplacian.hpp"
#include "ust/multigraph.hpp"
#include "ust/spanning_tree_sampler.hpp"
#include "ust/statistics.hpp"

namespace {

using namespace ust;

struct Config {
    std::string input;
    std::string family;
    long long n = 1024;
    long long m = 0;  // random family only; 0 = 3n
    std::string algo = "mst-fast";
    std::uint64_t seed = 1;
    int trials = 1;
    std::string out;
    std::string format = "edges";
    std::vector<std::string> checks;
    bool log = false;
};

Multigraph load_graph(const Config& cfg, std::string* label) {
    if (!cfg.input.empty()) {
        *label = cfg.input;
        return read_edge_list_file(cfg.input);
    }
    Rng rng(cfg.seed);
    Rng gen = rng.derive("family");
    *label = cfg.family + "(" + std::to_string(cfg.n) + ")";
    if (cfg.family == "dumbbell") return dumbbell_graph(static_cast<int>(cfg.n), gen).graph;
    if (cfg.family == "grid") {
        int side = std::max(2, static_cast<int>(std::llround(std::sqrt(double(cfg.n)))));
        return grid_graph(side, side);
    }
    if (cfg.family == "random") {
        long long m = cfg.m > 0 ? cfg.m : 3 * cfg.n;
        return random_connected_graph(static_cast<int>(cfg.n), m, gen);
    }
    throw std::invalid_argument("unknown family: " + cfg.family +
                                " (expected dumbbell, grid or random)");
}

std::ostream& open_out(const Config& cfg, std::ofstream& file) {
    if (cfg.out.empty()) return std::cout;
    file.open(cfg.out);
    if (!file) throw std::runtime_error("cannot open output file: " + cfg.out);
    return file;
}

// Deliberately non-uniform sampler used as a negative control in the
// verification command: prefers trees containing the lowest edge id.
EdgeSet biased_sample(const Multigraph& g, std::uint64_t seed) {
    Rng rng(seed);
    Rng r1 = rng.derive("a"), r2 = rng.derive("b");
    EdgeSet t1 = aldous_broder(g, r1);
    int lowest = g.live_edges().front();
    if (t1.contains(lowest)) return t1;
    EdgeSet t2 = aldous_broder(g, r2);
    if (t2.contains(lowest)) return t2;
    return t1;
}

EdgeSet run_sample(const Multigraph& g, const std::string& algo, std::uint64_t seed,
                   SampleResult* full = nullptr) {
    if (algo == "biased") return biased_sample(g, seed);
    SampleOptions opts;
    opts.algo = algo_from_name(algo);
    opts.seed = seed;
    opts.collect_log = full != nullptr;
    SampleResult res = sample_spanning_tree(g, opts);
    if (full) *full = res;
    return res.tree;
}

// Trials run on worker threads, each from its own derived seed; results
// are emitted in trial order.
std::vector<SampleResult> run_trials(const Multigraph& g, const std::string& algo,
                                     std::uint64_t seed, int trials, bool collect_log) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SampleResult> results(trials);
    std::atomic<int> next{0};
    auto worker = [&]() {
        int t;
        while ((t = next.fetch_add(1)) < trials) {
            Rng master(seed);
            std::uint64_t s = master.derive("trial", static_cast<std::uint64_t>(t)).u64();
            SampleOptions opts;
            opts.algo = algo_from_name(algo);
            opts.seed = s;
            opts.collect_log = collect_log;
            results[t] = sample_spanning_tree(g, opts);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers && static_cast<int>(w) < trials; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return results;
}

int cmd_sample(const Config& cfg) {
    std::string label;
    Multigraph g = load_graph(cfg, &label);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);

    if (cfg.algo == "biased") throw std::invalid_argument("biased sampler is verify-only");
    auto results = run_trials(g, cfg.algo, cfg.seed, cfg.trials, cfg.log);
    for (const auto& r : results)
        if (!is_spanning_tree(g, r.tree)) throw std::runtime_error("internal: non-tree output");

    if (cfg.format == "edges") {
        for (int t = 0; t < cfg.trials; ++t) {
            if (t > 0) os << "\n";
            for (int e : results[t].tree) {
                auto [a, b] = g.endpoints(e);
                os << a << " " << b << "\n";
            }
        }
    } else if (cfg.format == "json") {
        nlohmann::json doc;
        doc["n"] = g.vertex_count();
        doc["m"] = g.live_edge_count();
        doc["algo"] = cfg.algo;
        doc["seed"] = cfg.seed;
        doc["input"] = label;
        doc["trees"] = nlohmann::json::array();
        for (const auto& r : results) doc["trees"].push_back(r.tree.ids);
        if (cfg.log) {
            doc["log"] = nlohmann::json::array();
            for (const auto& r : results) doc["log"].push_back(r.log);
        }
        os << doc.dump(2) << "\n";
    } else {
        throw std::invalid_argument("unknown format: " + cfg.format);
    }
    return 0;
}

bool check_uniformity(const Multigraph& g, const Config& cfg, std::ostream& os) {
    TreeCatalog cat = enumerate_spanning_trees(g);
    std::vector<long long> counts(cat.size(), 0);
    int trials = std::max(cfg.trials, 1);
    Rng master(cfg.seed);
    for (int t = 0; t < trials; ++t) {
        std::uint64_t s = master.derive("verify", static_cast<std::uint64_t>(t)).u64();
        EdgeSet tree = run_sample(g, cfg.algo, s);
        ++counts[cat.index(tree.ids)];
    }
    auto res = chi_square_uniform(counts);
    bool pass = res.p_value > 1e-3;
    os << (pass ? "PASS" : "FAIL") << " uniformity: " << cat.size() << " trees, N=" << trials
       << ", chi2=" << res.statistic << ", p=" << res.p_value << "\n";
    return pass;
}

bool check_edge_marginals(const Multigraph& g, const Config& cfg, std::ostream& os) {
    int trials = std::max(cfg.trials, 1);
    std::vector<long long> incl(g.edge_id_space(), 0);
    Rng master(cfg.seed);
    for (int t = 0; t < trials; ++t) {
        std::uint64_t s = master.derive("verify", static_cast<std::uint64_t>(t)).u64();
        EdgeSet tree = run_sample(g, cfg.algo, s);
        for (int e : tree) ++incl[e];
    }
    bool pass = true;
    double worst = 0;
    for (int e : g.live_edges()) {
        double p = static_cast<double>(exact_edge_inclusion(g, e).convert_to<double>());
        double freq = static_cast<double>(incl[e]) / trials;
        double band = 4.0 * std::sqrt(std::max(p * (1 - p), 1e-12) / trials);
        worst = std::max(worst, std::fabs(freq - p) - band);
        if (std::fabs(freq - p) > band) pass = false;
    }
    os << (pass ? "PASS" : "FAIL") << " edge-marginals: N=" << trials
       << ", worst excess over band=" << worst << "\n";
    return pass;
}

bool check_resistance_metric(const Multigraph& g, std::ostream& os) {
    // Exact rational identity: edge inclusion probabilities sum to n-1.
    Rational total = 0;
    for (int e : g.live_edges()) total += exact_edge_inclusion(g, e);
    bool identity = total == Rational(g.vertex_count() - 1);
    // Iterative solves agree with exact rational resistances.
    bool agree = true;
    double worst = 0;
    for (int v = 1; v < g.vertex_count(); ++v) {
        double exact = exact_resistance(g, 0, v).convert_to<double>();
        double approx = effective_resistance(g, 0, v, 1e-10);
        worst = std::max(worst, std::fabs(exact - approx));
        if (std::fabs(exact - approx) > 1e-6) agree = false;
    }
    bool pass = identity && agree;
    os << (pass ? "PASS" : "FAIL") << " resistance-metric: marginal sum "
       << (identity ? "exact" : "WRONG") << ", max |exact - solver| = " << worst << "\n";
    return pass;
}

int cmd_verify(Config cfg, bool trials_given) {
    if (!trials_given) cfg.trials = 20000;
    std::string label;
    Multigraph g = load_graph(cfg, &label);
    std::vector<std::string> checks = cfg.checks;
    if (checks.empty() || (checks.size() == 1 && checks[0] == "all"))
        checks = {"uniformity", "edge-marginals", "resistance-metric"};
    bool all = true;
    std::cout << "verify " << label << " algo=" << cfg.algo << "\n";
    for (const auto& c : checks) {
        if (c == "uniformity")
            all = check_uniformity(g, cfg, std::cout) && all;
        else if (c == "edge-marginals")
            all = check_edge_marginals(g, cfg, std::cout) && all;
        else if (c == "resistance-metric")
            all = check_resistance_metric(g, std::cout) && all;
        else
            throw std::invalid_argument("unknown check: " + c);
    }
    return all ? 0 : 1;
}

int cmd_bench(const Config& cfg) {
    std::string label;
    Multigraph g = load_graph(cfg, &label);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    std::vector<std::string> algos;
    if (cfg.algo == "all")
        algos = {"aldous-broder", "wilson", "mst-fast"};
    else
        algos = {cfg.algo};

    os << "family,n,m,algo,seed,ms,faithful_steps,jumps,samplers\n";
    for (const auto& algo : algos) {
        Rng master(cfg.seed);
        for (int t = 0; t < cfg.trials; ++t) {
            std::uint64_t s = master.derive("bench", static_cast<std::uint64_t>(t)).u64();
            auto t0 = std::chrono::steady_clock::now();
            SampleResult res;
            if (algo == "aldous-broder") {
                Rng r(s);
                WalkStats st;
                res.tree = aldous_broder(g, r, 0, &st);
                res.faithful_steps = st.steps;
            } else if (algo == "wilson") {
                Rng r(s);
                long long steps = 0;
                res.tree = wilson(g, r, 0, &steps);
                res.faithful_steps = steps;
            } else {
                SampleOptions opts;
                opts.algo = Algo::mst_fast;
                opts.seed = s;
                res = sample_spanning_tree(g, opts);
            }
            auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                t0)
                          .count();
            ensure(is_spanning_tree(g, res.tree), "bench produced a non-tree");
            os << (cfg.family.empty() ? label : cfg.family) << "," << g.vertex_count() << ","
               << g.live_edge_count() << "," << algo << "," << s << "," << ms << ","
               << res.faithful_steps << "," << res.jumps << "," << res.samplers_built << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform spanning tree sampling toolkit"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub, bool with_algo_all) {
        sub->add_option("input", cfg.input, "edge list file (`u v` per line, optional `n m` header)");
        sub->add_option("--family", cfg.family, "generate input: dumbbell, grid, random");
        sub->add_option("--n", cfg.n, "family size parameter");
        sub->add_option("--m", cfg.m, "edge count for the random family (default 3n)");
        sub->add_option("--seed", cfg.seed, "master seed (default 1)");
        sub->add_option("--trials", cfg.trials, "number of samples")->check(CLI::PositiveNumber);
        std::string algos = with_algo_all ? "aldous-broder|wilson|mst-fast|all"
                                          : "aldous-broder|wilson|mst-fast";
        sub->add_option("--algo", cfg.algo, "sampler: " + algos);
        sub->add_option("--out", cfg.out, "output file (default stdout)");
    };

    CLI::App* sample = app.add_subcommand("sample", "sample spanning trees");
    add_common(sample, false);
    sample->add_option("--format", cfg.format, "edges|json");
    sample->add_flag("--log", cfg.log, "include per-iteration instrumentation (json format)");

    CLI::App* verify = app.add_subcommand("verify", "check sampler output against exact ground truth");
    add_common(verify, false);
    verify->add_option("--check", cfg.checks,
                       "uniformity, edge-marginals, resistance-metric or all");

    CLI::App* bench = app.add_subcommand("bench", "time samplers on generated families, emit CSV");
    add_common(bench, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sample)) return cmd_sample(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg, verify->count("--trials") > 0);
        if (app.got_subcommand(bench)) return cmd_bench(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
