#include "tricenter/operators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {

// quadrature cells over [a, b]: t-grid nodes, the budget kink at 0, endpoints
std::vector<double> cell_cuts(const Axis& taxis, double a, double b) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> cuts;
    cuts.push_back(lo);
    const double h = taxis.step();
    int i0 = static_cast<int>(std::ceil((lo - taxis.lo) / h));
    for (int i = std::max(i0, 0); i < taxis.n; ++i) {
        const double node = taxis.node(i);
        if (node >= hi) break;
        if (node > lo) cuts.push_back(node);
    }
    if (0.0 > lo && 0.0 < hi) cuts.push_back(0.0);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               cuts.end());
    return cuts;
}

// state of the transported pair at time r for the trajectory anchored at
// (s-node or interpolated s, xi): v = x(r, ., .) + phi(r, coords(x))
struct PairEvaluator {
    const LpProblem& p;
    const CenterField& x;
    const GraphField& phi;

    // s and xi on grid nodes (J integrands): 1-d interpolation along t
    Eigen::VectorXd at_node(double r, int is, int kxi) const {
        Eigen::VectorXd vx(x.dim());
        x.eval_t(r, is, kxi, vx.data());
        return with_graph(r, vx);
    }

    // s off-grid (L integrands evaluated at t-grid anchor times)
    Eigen::VectorXd at_time(double r, double s, const double* xi) const {
        Eigen::VectorXd vx(x.dim());
        x.eval(r, s, xi, vx.data());
        return with_graph(r, vx);
    }

    Eigen::VectorXd with_graph(double r, const Eigen::VectorXd& vx) const {
        double coords[3];
        p.sys->center_coords(vx, coords);
        Eigen::VectorXd vphi(phi.dim());
        phi.eval(r, coords, vphi.data());
        return vx + vphi;
    }
};

// Simpson rule per cell for vector integrands
template <typename Integrand>
Eigen::VectorXd integrate_cells(const std::vector<double>& cuts, int dim, const Integrand& g) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double m = 0.5 * (a + b);
        acc += (b - a) / 6.0 * (g(a) + 4.0 * g(m) + g(b));
    }
    return acc;
}

// Simpson nodes and weights for a cell decomposition, with the transported
// projection matrices precomputed once; the quadrature is then reused across
// every xi column of the grid
struct WeightedNodes {
    std::vector<double> r;
    std::vector<double> w;
    std::vector<Eigen::MatrixXd> m;  // weight-scaled T(target, r) Proj(r)

    template <typename MatrixAt>
    static WeightedNodes build(const std::vector<double>& cuts, const MatrixAt& mat_at) {
        WeightedNodes nodes;
        nodes.r.reserve(3 * cuts.size());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            if (b <= a) continue;
            const double h = (b - a) / 6.0;
            nodes.r.insert(nodes.r.end(), {a, 0.5 * (a + b), b});
            nodes.w.insert(nodes.w.end(), {h, 4.0 * h, h});
        }
        nodes.m.reserve(nodes.r.size());
        for (size_t j = 0; j < nodes.r.size(); ++j)
            nodes.m.push_back(nodes.w[j] * mat_at(nodes.r[j]));
        return nodes;
    }
};

}  // namespace

TruncationCertificate certify_truncation(const LpProblem& p) {
    TruncationCertificate cert;
    cert.ok = true;
    if (p.f->is_zero) return cert;
    const GridSpec& g = p.grid;
    const double R = g.effective_trunc_radius();
    const BoundFamily& bounds = p.sys->bounds;
    const auto& lip = p.f->budget;
    const double scale = p.M * (1.0 + p.N);
    const double h = std::max(0.25, g.t.step());

    auto tail_estimate = [&](double s, int dir) {
        const double edge = dir > 0 ? R : -R;
        auto integrand = [&](double r) {
            return dir > 0 ? bounds.beta_minus_at(s, r) * lip.at(r) * bounds.alpha_at(r, s)
                           : bounds.beta_plus_at(s, r) * lip.at(r) * bounds.alpha_at(r, s);
        };
        // probe outward so the beta domains stay respected for every s
        const double g0 = integrand(edge);
        if (g0 == 0.0) return 0.0;
        const double g1 = integrand(edge + dir * h);
        if (!(g0 > g1))
            throw TruncationError("half-line integrand is not decaying at the truncation radius");
        const double rate = std::log(g0 / g1) / h;
        return g0 / rate;
    };

    for (int i = 0; i < g.t.n; ++i) {
        const double s = g.t.node(i);
        for (int dir : {+1, -1}) {
            const double tail = scale * tail_estimate(s, dir);
            if (tail > cert.worst_tail) {
                cert.worst_tail = tail;
                cert.at_time = s;
            }
        }
    }
    cert.ok = cert.worst_tail <= g.tail_tol;
    if (!cert.ok)
        throw TruncationError("certified truncation tail " + std::to_string(cert.worst_tail) +
                              " exceeds the configured budget " + std::to_string(g.tail_tol));
    return cert;
}

CenterField initial_center_field(const LpProblem& p) {
    const GridSpec& g = p.grid;
    CenterField x(g, p.sys->dim);
    const int nk = g.xi_nodes();
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (int it = 0; it < g.t.n; ++it)
        for (int is = 0; is < g.s.n; ++is) {
            const Eigen::MatrixXd tp =
                p.sys->T(g.t.node(it), g.s.node(is)) * p.sys->splitting.P(g.s.node(is));
            double xi[3];
            for (int k = 0; k < nk; ++k) {
                x.xi_of(k, xi);
                Eigen::Map<Eigen::VectorXd>(x.node(it, is, k), p.sys->dim) =
                    tp * p.sys->embed_center(xi);
            }
        }
    return x;
}

GraphField zero_graph_field(const LpProblem& p) { return GraphField(p.grid, p.sys->dim); }

CenterField apply_J(const LpProblem& p, const CenterField& x, const GraphField& phi) {
    const GridSpec& g = p.grid;
    CenterField out(g, p.sys->dim);
    const int nk = g.xi_nodes();
    const PairEvaluator pair{p, x, phi};
    const bool zero = p.f->is_zero;

#pragma omp parallel for collapse(2) schedule(dynamic)
    for (int it = 0; it < g.t.n; ++it)
        for (int is = 0; is < g.s.n; ++is) {
            const double t = g.t.node(it), s = g.s.node(is);
            const Eigen::MatrixXd tp = p.sys->T(t, s) * p.sys->splitting.P(s);
            const double sign = (t >= s) ? 1.0 : -1.0;
            WeightedNodes nodes;
            if (!zero && t != s)
                nodes = WeightedNodes::build(cell_cuts(g.t, s, t), [&](double r) {
                    return Eigen::MatrixXd(p.sys->T(t, r) * p.sys->splitting.P(r));
                });
            double xi[3];
            Eigen::VectorXd val(p.sys->dim);
            for (int k = 0; k < nk; ++k) {
                out.xi_of(k, xi);
                val = tp * p.sys->embed_center(xi);
                for (size_t j = 0; j < nodes.r.size(); ++j)
                    val.noalias() +=
                        sign * (nodes.m[j] * p.f->f(nodes.r[j], pair.at_node(nodes.r[j], is, k)));
                Eigen::Map<Eigen::VectorXd>(out.node(it, is, k), p.sys->dim) = val;
            }
        }
    return out;
}

namespace {

enum class GraphPart { Plus, Minus, Both };

GraphField apply_graph_operator(const LpProblem& p, const CenterField& x, const GraphField& phi,
                                GraphPart part) {
    const GridSpec& g = p.grid;
    GraphField out(g, p.sys->dim);
    if (p.f->is_zero) return out;
    const double R = g.effective_trunc_radius();
    const int nk = g.xi_nodes();
    const PairEvaluator pair{p, x, phi};

#pragma omp parallel for schedule(dynamic)
    for (int im = 0; im < g.t.n; ++im) {
        const double s = g.t.node(im);
        const auto cuts_plus = cell_cuts(g.t, -R, s);   // Q+ part integrates from -R
        const auto cuts_minus = cell_cuts(g.t, s, R);   // Q- part integrates to +R
        double xi[3];
        for (int k = 0; k < nk; ++k) {
            out.xi_of(k, xi);
            Eigen::VectorXd val = Eigen::VectorXd::Zero(p.sys->dim);
            if (part != GraphPart::Minus && s > -R) {
                auto integrand = [&](double r) -> Eigen::VectorXd {
                    const Eigen::VectorXd v = pair.at_time(r, s, xi);
                    return p.sys->T(s, r) * (p.sys->splitting.Qp(r) * p.f->f(r, v));
                };
                val += integrate_cells(cuts_plus, p.sys->dim, integrand);
            }
            if (part != GraphPart::Plus && s < R) {
                auto integrand = [&](double r) -> Eigen::VectorXd {
                    const Eigen::VectorXd v = pair.at_time(r, s, xi);
                    return p.sys->T(s, r) * (p.sys->splitting.Qm(r) * p.f->f(r, v));
                };
                val -= integrate_cells(cuts_minus, p.sys->dim, integrand);
            }
            Eigen::Map<Eigen::VectorXd>(out.node(im, k), p.sys->dim) = val;
        }
    }
    return out;
}

}  // namespace

GraphField apply_Lplus(const LpProblem& p, const CenterField& x, const GraphField& phi) {
    return apply_graph_operator(p, x, phi, GraphPart::Plus);
}

GraphField apply_Lminus(const LpProblem& p, const CenterField& x, const GraphField& phi) {
    return apply_graph_operator(p, x, phi, GraphPart::Minus);
}

GraphField apply_L(const LpProblem& p, const CenterField& x, const GraphField& phi) {
    return apply_graph_operator(p, x, phi, GraphPart::Both);
}

}  // namespace tricenter
