#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ust/multigraph.hpp"

namespace ust {

struct EdgeListError : std::runtime_error {
    explicit EdgeListError(const std::string& msg) : std::runtime_error(msg) {}
};

// Text edge lists: one `u v` pair per line, `#` starts a comment, blank
// lines ignored. An optional leading `n m` header declares the vertex and
// edge counts; without it, n is inferred as max id + 1. A first line `a b`
// is treated as a header exactly when b equals the number of remaining
// pairs and a is large enough to cover every endpoint that follows.
// Repeated pairs are parallel edges. The graph must be connected and
// self-loop free.
inline Multigraph read_edge_list(std::istream& in) {
    std::vector<std::pair<long long, long long>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long a, b;
        if (!(ls >> a)) continue;  // blank / comment-only line
        if (!(ls >> b)) throw EdgeListError("line " + std::to_string(lineno) + ": expected two integers");
        long long extra;
        if (ls >> extra) throw EdgeListError("line " + std::to_string(lineno) + ": expected two integers");
        if (a < 0 || b < 0) throw EdgeListError("line " + std::to_string(lineno) + ": negative id");
        pairs.emplace_back(a, b);
    }
    if (pairs.empty()) throw EdgeListError("no edges in input");

    long long max_end = -1;
    for (std::size_t i = 1; i < pairs.size(); ++i)
        max_end = std::max({max_end, pairs[i].first, pairs[i].second});
    bool has_header = pairs[0].second == static_cast<long long>(pairs.size()) - 1 &&
                      pairs[0].first > max_end;
    long long n;
    std::size_t first = 0;
    if (has_header) {
        n = pairs[0].first;
        first = 1;
    } else {
        n = 0;
        for (auto [a, b] : pairs) n = std::max({n, a + 1, b + 1});
    }
    if (n < 1) throw EdgeListError("vertex count must be positive");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(pairs.size() - first);
    for (std::size_t i = first; i < pairs.size(); ++i) {
        auto [a, b] = pairs[i];
        if (a >= n || b >= n) throw EdgeListError("edge endpoint " + std::to_string(std::max(a, b)) +
                                                  " out of range for n=" + std::to_string(n));
        if (a == b) throw EdgeListError("self-loop at vertex " + std::to_string(a));
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    Multigraph g(static_cast<int>(n), edges);
    if (!is_connected(g)) throw EdgeListError("graph is disconnected");
    return g;
}

inline Multigraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EdgeListError("cannot open " + path);
    return read_edge_list(in);
}

inline void write_edge_list(const Multigraph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.live_edge_count() << '\n';
    for (int e : g.live_edges()) {
        auto [a, b] = g.endpoints(e);
        out << a << ' ' << b << '\n';
    }
}

}  // namespace ust
