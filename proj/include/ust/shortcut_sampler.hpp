#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <utility>
#include <vector>

#include "ust/laplacian.hpp"
#include "ust/multigraph.hpp"
#include "ust/rng.hpp"

namespace ust {

// Samples, for a walk standing at v inside a fixed vertex set, the first
// boundary edge through which the walk leaves the set. Works per interior
// connected component: for each boundary edge e = (u, u') the exit
// probability from every start vertex is the harmonic voltage in an
// auxiliary graph where u' is the unit-potential terminal and all other
// boundary edges are redirected into a grounded collector vertex.
//
// Tables hold prefix sums of the exit distribution per start vertex. Each
// entry is accurate to the solve tolerance, so a prefix is trusted to
// |boundary| * tol. Draws landing within that margin of a cell boundary
// re-resolve the component at half the tolerance and replay the same
// uniform draw until the cell is unambiguous or the tolerance floor is
// reached.
class ShortcutSampler {
  public:
    ShortcutSampler(const Multigraph& g, VertexSet s, double tol = 1e-8)
        : g_(&g), s_(std::move(s)), tol0_(tol) {
        ensure(!s_.empty(), "shortcut set is empty");
        ensure(tol0_ > 0, "tolerance must be positive");
        tol_floor_ = std::max(tol0_ * std::pow(2.0, -40), 1e3 * DBL_EPSILON);
        ensure(!boundary(*g_, s_).empty(), "shortcut set has no boundary to exit through");
        auto comps = connected_components(*g_, s_);
        comps_.resize(comps.size());
        comp_of_.assign(g.vertex_count(), -1);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            comps_[i].verts = std::move(comps[i]);
            for (int v : comps_[i].verts) comp_of_[v] = static_cast<int>(i);
            comps_[i].bedges = boundary(*g_, comps_[i].verts).ids;
            for (int e : comps_[i].bedges) {
                auto [a, b] = g.endpoints(e);
                comps_[i].binner.push_back(comps_[i].verts.contains(a) ? a : b);
            }
        }
    }

    // Returns the boundary edge id through which the walk first leaves the
    // set when started at v.
    int sample_exit(int v, Rng& rng) {
        Component& c = component_for(v);
        if (c.verts.size() == 1) {
            // Isolated-in-set vertex: every incident edge leaves, uniformly.
            const auto& inc = g_->incident(v);
            return inc[rng.index(static_cast<int>(inc.size()))].edge;
        }
        if (c.bedges.size() == 1) return c.bedges[0];
        double r = rng.real();
        while (true) {
            if (!c.built) build(c);
            int row = c.row_of(v);
            int nb = static_cast<int>(c.bedges.size());
            double eps = nb * c.tol;
            int pick = nb - 1;
            double acc = 0;
            bool ambiguous = false;
            for (int j = 0; j < nb; ++j) {
                acc += c.prob(row, j);
                if (std::fabs(r - acc) <= eps) ambiguous = true;
                if (r < acc) {
                    pick = j;
                    break;
                }
            }
            if (!ambiguous || c.tol <= tol_floor_) return c.bedges[pick];
            c.tol = std::max(c.tol / 2, tol_floor_);
            c.built = false;
            ++refinements_;
        }
    }

    // Current exit distribution for start vertex v as (edge id, probability).
    std::vector<std::pair<int, double>> exit_distribution(int v) {
        Component& c = component_for(v);
        std::vector<std::pair<int, double>> out;
        if (c.verts.size() == 1) {
            const auto& inc = g_->incident(v);
            double p = 1.0 / inc.size();
            std::vector<std::pair<int, double>> acc;
            for (const auto& i : inc) acc.emplace_back(i.edge, p);
            std::sort(acc.begin(), acc.end());
            for (auto& [e, q] : acc) {
                if (!out.empty() && out.back().first == e)
                    out.back().second += q;
                else
                    out.emplace_back(e, q);
            }
            return out;
        }
        if (c.bedges.size() == 1) return {{c.bedges[0], 1.0}};
        if (!c.built) build(c);
        int row = c.row_of(v);
        for (std::size_t j = 0; j < c.bedges.size(); ++j)
            out.emplace_back(c.bedges[j], c.prob(row, static_cast<int>(j)));
        return out;
    }

    const VertexSet& covered() const { return s_; }
    long long solver_iterations() const { return solver_iterations_; }
    int tables_built() const { return tables_built_; }
    int refinements() const { return refinements_; }

  private:
    struct Component {
        VertexSet verts;
        std::vector<int> bedges;  // sorted boundary edge ids
        std::vector<int> binner;  // inner endpoint per boundary edge
        Eigen::MatrixXd prob;     // row: position in verts, col: position in bedges
        double tol = 0;
        bool built = false;

        int row_of(int v) const {
            auto it = std::lower_bound(verts.ids.begin(), verts.ids.end(), v);
            return static_cast<int>(it - verts.ids.begin());
        }
    };

    Component& component_for(int v) {
        ensure(v >= 0 && v < static_cast<int>(comp_of_.size()) && comp_of_[v] >= 0,
               "vertex outside the shortcut set");
        return comps_[comp_of_[v]];
    }

    void build(Component& c) {
        if (c.tol == 0) c.tol = tol0_;
        int nx = static_cast<int>(c.verts.size());
        int src = nx, snk = nx + 1;
        EdgeSet inner_edges = interior(*g_, c.verts);
        std::vector<std::pair<int, int>> base;
        base.reserve(inner_edges.size() + c.bedges.size());
        for (int e : inner_edges) {
            auto [a, b] = g_->endpoints(e);
            base.emplace_back(c.row_of(a), c.row_of(b));
        }
        c.prob.resize(nx, static_cast<int>(c.bedges.size()));
        for (std::size_t j = 0; j < c.bedges.size(); ++j) {
            auto edges = base;
            for (std::size_t t = 0; t < c.bedges.size(); ++t)
                edges.emplace_back(c.row_of(c.binner[t]), t == j ? src : snk);
            Multigraph aux(nx + 2, edges);
            int iters = 0;
            Vec volt = harmonic_voltages(aux, src, snk, c.tol, &iters);
            solver_iterations_ += iters;
            for (int row = 0; row < nx; ++row) c.prob(row, static_cast<int>(j)) = volt[row];
        }
        for (int row = 0; row < nx; ++row) {
            double total = c.prob.row(row).sum();
            ensure(std::fabs(total - 1.0) <= 1e-3, "exit distribution mass off by more than noise");
        }
        c.built = true;
        ++tables_built_;
    }

    const Multigraph* g_;
    VertexSet s_;
    double tol0_ = 0, tol_floor_ = 0;
    std::vector<Component> comps_;
    std::vector<int> comp_of_;
    long long solver_iterations_ = 0;
    int tables_built_ = 0;
    int refinements_ = 0;
};

}  // namespace ust
