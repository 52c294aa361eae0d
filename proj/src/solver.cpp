#include "tricenter/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tricenter/errors.hpp"

namespace tricenter {

SolverState iterate_to_fixed_point(const LpProblem& p, const SolverOptions& opts) {
    if (!(p.q >= 0.0) || !(p.q < 1.0))
        throw HypothesisViolated("fixed-point iteration requires a contraction factor q < 1; got " +
                                 std::to_string(p.q));
    p.grid.validate();

    SolverState st;
    st.truncation = certify_truncation(p);
    st.x = initial_center_field(p);
    st.phi = zero_graph_field(p);

    const BoundFamily& bounds = p.sys->bounds;
    const NormSpec& norm = p.sys->norm;
    int above_ratio = 0;

    for (int k = 1; k <= opts.max_iterations; ++k) {
        CenterField xn = apply_J(p, st.x, st.phi);
        GraphField pn = apply_L(p, st.x, st.phi);
        const double sd = metric_dprime(xn, st.x, bounds, norm);
        const double sg = metric_d(pn, st.phi, norm);
        const double step = sd + sg;
        st.extrapolation_queries +=
            st.phi.extrapolation_queries() + st.x.extrapolation_queries();
        st.x = std::move(xn);
        st.phi = std::move(pn);
        st.iterations = k;
        if (!st.steps.empty() && st.steps.back() > 0.0) {
            const double ratio = step / st.steps.back();
            st.ratios.push_back(ratio);
            if (k > opts.burn_in && ratio > p.q * (1.0 + opts.ratio_slack)) {
                if (++above_ratio >= 3) st.coarse_warning = true;
            } else {
                above_ratio = 0;
            }
        }
        st.steps.push_back(step);
        st.steps_dprime.push_back(sd);
        st.steps_d.push_back(sg);
        if (step < opts.tol) {
            st.converged = true;
            break;
        }
    }
    if (!st.converged) {
        std::ostringstream msg;
        msg << "fixed-point iteration did not reach step < " << opts.tol << " in "
            << opts.max_iterations << " iterations; steps:";
        for (double s : st.steps) msg << " " << s;
        throw NonConvergence(msg.str());
    }
    st.error_bound = (p.q > 0.0) ? p.q / (1.0 - p.q) * st.steps.back() : 0.0;
    return st;
}

namespace {

double rel_norm(const Eigen::VectorXd& v, double scale, const NormSpec& norm) {
    return vector_norm(v, norm) / scale;
}

}  // namespace

MembershipReport center_membership(const LpProblem& p, const CenterField& x, double slack) {
    const GridSpec& g = p.grid;
    const int n = p.sys->dim, nk = g.xi_nodes();
    MembershipReport rep;
    Eigen::VectorXd val(n);
    double xi[3], xj[3];

    // origin column is the all-zero xi node, if present
    for (int k = 0; k < nk; ++k) {
        x.xi_of(k, xi);
        bool zero = true;
        for (int d = 0; d < g.dim_center; ++d) zero = zero && xi[d] == 0.0;
        if (!zero) continue;
        for (int it = 0; it < g.t.n; ++it)
            for (int is = 0; is < g.s.n; ++is)
                rep.zero_at_origin =
                    std::max(rep.zero_at_origin,
                             vector_norm(Eigen::Map<const Eigen::VectorXd>(x.node(it, is, k), n),
                                         p.sys->norm));
    }

    // anchoring x(s, s, xi) = xi at s-nodes that coincide with t-nodes
    for (int is = 0; is < g.s.n; ++is) {
        const double s = g.s.node(is);
        const double u = (s - g.t.lo) / g.t.step();
        if (std::abs(u - std::round(u)) > 1e-9) continue;
        const int it = static_cast<int>(std::round(u));
        for (int k = 0; k < nk; ++k) {
            x.xi_of(k, xi);
            Eigen::Map<const Eigen::VectorXd> v(x.node(it, is, k), n);
            const double nxi = vector_norm(p.sys->embed_center(xi), p.sys->norm);
            if (nxi == 0.0) continue;
            rep.anchor = std::max(rep.anchor,
                                  rel_norm(v - p.sys->embed_center(xi), nxi, p.sys->norm));
        }
    }

    // range: values stay in the center subbundle
    for (int it = 0; it < g.t.n; ++it) {
        const Eigen::MatrixXd proj =
            Eigen::MatrixXd::Identity(n, n) - p.sys->splitting.P(g.t.node(it));
        for (int is = 0; is < g.s.n; ++is)
            for (int k = 0; k < nk; ++k) {
                x.xi_of(k, xi);
                const double nxi =
                    std::max(vector_norm(p.sys->embed_center(xi), p.sys->norm), 1e-12);
                Eigen::Map<const Eigen::VectorXd> v(x.node(it, is, k), n);
                rep.range_residual =
                    std::max(rep.range_residual, rel_norm(proj * v, nxi, p.sys->norm));
            }
    }

    // discrete Lipschitz constant against M alpha_{t,s} over neighboring xi nodes
    double worst_lip = 0.0;
    for (int it = 0; it < g.t.n; ++it) {
        const double t = g.t.node(it);
        for (int is = 0; is < g.s.n; ++is) {
            const double alpha = p.sys->bounds.alpha_at(t, g.s.node(is));
            for (int k = 0; k < nk; ++k) {
                x.xi_of(k, xi);
                for (int d = 0; d < g.dim_center; ++d) {
                    int stride = 1;
                    for (int e = g.dim_center - 1; e > d; --e) stride *= g.xi.n;
                    const int kd = (k / stride) % g.xi.n;
                    if (kd + 1 >= g.xi.n) continue;
                    x.xi_of(k + stride, xj);
                    Eigen::Map<const Eigen::VectorXd> va(x.node(it, is, k), n);
                    Eigen::Map<const Eigen::VectorXd> vb(x.node(it, is, k + stride), n);
                    const double dxi = vector_norm(
                        p.sys->embed_center(xi) - p.sys->embed_center(xj), p.sys->norm);
                    worst_lip = std::max(
                        worst_lip, vector_norm(Eigen::VectorXd(va - vb), p.sys->norm) /
                                       (alpha * dxi));
                }
            }
        }
    }
    rep.lipschitz_excess = worst_lip / p.M;
    rep.pass = rep.zero_at_origin <= 1e-12 && rep.anchor <= 1e-9 &&
               rep.range_residual <= 1e-9 && rep.lipschitz_excess <= 1.0 + slack;
    return rep;
}

MembershipReport graph_membership(const LpProblem& p, const GraphField& phi, double slack) {
    const GridSpec& g = p.grid;
    const int n = p.sys->dim, nk = g.xi_nodes();
    MembershipReport rep;
    double xi[3], xj[3];

    for (int k = 0; k < nk; ++k) {
        phi.xi_of(k, xi);
        bool zero = true;
        for (int d = 0; d < g.dim_center; ++d) zero = zero && xi[d] == 0.0;
        if (!zero) continue;
        for (int im = 0; im < g.t.n; ++im)
            rep.zero_at_origin = std::max(
                rep.zero_at_origin,
                vector_norm(Eigen::Map<const Eigen::VectorXd>(phi.node(im, k), n), p.sys->norm));
    }

    for (int im = 0; im < g.t.n; ++im) {
        const Eigen::MatrixXd proj = p.sys->splitting.P(g.t.node(im));
        for (int k = 0; k < nk; ++k) {
            phi.xi_of(k, xi);
            const double nxi = std::max(vector_norm(p.sys->embed_center(xi), p.sys->norm), 1e-12);
            Eigen::Map<const Eigen::VectorXd> v(phi.node(im, k), n);
            rep.range_residual =
                std::max(rep.range_residual, rel_norm(proj * v, nxi, p.sys->norm));
        }
    }

    double worst_lip = 0.0;
    for (int im = 0; im < g.t.n; ++im)
        for (int k = 0; k < nk; ++k) {
            phi.xi_of(k, xi);
            for (int d = 0; d < g.dim_center; ++d) {
                int stride = 1;
                for (int e = g.dim_center - 1; e > d; --e) stride *= g.xi.n;
                const int kd = (k / stride) % g.xi.n;
                if (kd + 1 >= g.xi.n) continue;
                phi.xi_of(k + stride, xj);
                Eigen::Map<const Eigen::VectorXd> va(phi.node(im, k), n);
                Eigen::Map<const Eigen::VectorXd> vb(phi.node(im, k + stride), n);
                const double dxi =
                    vector_norm(p.sys->embed_center(xi) - p.sys->embed_center(xj), p.sys->norm);
                worst_lip = std::max(worst_lip,
                                     vector_norm(Eigen::VectorXd(va - vb), p.sys->norm) / dxi);
            }
        }
    rep.lipschitz_excess = (p.N > 0.0) ? worst_lip / p.N : (worst_lip > 0.0 ? 1e30 : 0.0);
    rep.pass = rep.zero_at_origin <= 1e-12 && rep.range_residual <= 1e-9 &&
               rep.lipschitz_excess <= 1.0 + slack;
    return rep;
}

TransportReport verify_graph_transport(const LpProblem& p, const SolverState& state,
                                       const std::vector<std::array<double, 4>>& samples) {
    TransportReport rep;
    rep.samples = static_cast<int>(samples.size());
    const int n = p.sys->dim;

    std::vector<double> worst_local(samples.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < samples.size(); ++i) {
        const double t = samples[i][0], s = samples[i][1];
        const double xi[3] = {samples[i][2], samples[i][3], 0.0};
        const double nxi = vector_norm(p.sys->embed_center(xi), p.sys->norm);
        if (nxi == 0.0) continue;

        Eigen::VectorXd xts(n);
        state.x.eval(t, s, xi, xts.data());
        double end_coords[3];
        p.sys->center_coords(xts, end_coords);
        Eigen::VectorXd phi_end(n);
        state.phi.eval(t, end_coords, phi_end.data());
        Eigen::VectorXd phi_start(n);
        state.phi.eval(s, xi, phi_start.data());

        // each hyperbolic part is transported in its contracting direction
        // (unstable upward in time, stable downward); the rearranged equations
        // are algebraically identical to the one-sided form but keep all
        // transport coefficients bounded by the trichotomy
        const double lo = std::min(s, t), hi = std::max(s, t);
        const Eigen::VectorXd& phi_lo = (t >= s) ? phi_start : phi_end;
        const Eigen::VectorXd& phi_hi = (t >= s) ? phi_end : phi_start;

        Eigen::VectorXd int_up = Eigen::VectorXd::Zero(n);    // T_{hi,r} Q+ f
        Eigen::VectorXd int_down = Eigen::VectorXd::Zero(n);  // T_{lo,r} Q- f
        if (!p.f->is_zero && t != s) {
            std::vector<double> cuts{lo};
            for (int j = 0; j < p.grid.t.n; ++j) {
                const double node = p.grid.t.node(j);
                if (node > lo && node < hi) cuts.push_back(node);
            }
            if (0.0 > lo && 0.0 < hi) cuts.push_back(0.0);
            cuts.push_back(hi);
            std::sort(cuts.begin(), cuts.end());
            auto value_at = [&](double r) {
                Eigen::VectorXd vx(n);
                state.x.eval(r, s, xi, vx.data());
                double c[3];
                p.sys->center_coords(vx, c);
                Eigen::VectorXd vphi(n);
                state.phi.eval(r, c, vphi.data());
                return p.f->f(r, Eigen::VectorXd(vx + vphi));
            };
            for (size_t j = 0; j + 1 < cuts.size(); ++j) {
                const double a = cuts[j], b = cuts[j + 1], m = 0.5 * (a + b);
                auto term = [&](double r) -> std::pair<Eigen::VectorXd, Eigen::VectorXd> {
                    const Eigen::VectorXd fv = value_at(r);
                    return {p.sys->T(hi, r) * (p.sys->splitting.Qp(r) * fv),
                            p.sys->T(lo, r) * (p.sys->splitting.Qm(r) * fv)};
                };
                auto [ua, da] = term(a);
                auto [um, dm] = term(m);
                auto [ub, db] = term(b);
                int_up += (b - a) / 6.0 * (ua + 4.0 * um + ub);
                int_down += (b - a) / 6.0 * (da + 4.0 * dm + db);
            }
        }

        const Eigen::VectorXd res_plus =
            p.sys->splitting.Qp(hi) * phi_hi -
            p.sys->T(hi, lo) * (p.sys->splitting.Qp(lo) * phi_lo) - int_up;
        const Eigen::VectorXd res_minus =
            p.sys->splitting.Qm(lo) * phi_lo -
            p.sys->T(lo, hi) * (p.sys->splitting.Qm(hi) * phi_hi) + int_down;
        worst_local[i] = std::max(vector_norm(res_plus, p.sys->norm),
                                  vector_norm(res_minus, p.sys->norm)) /
                         nxi;
    }
    for (size_t i = 0; i < samples.size(); ++i)
        if (worst_local[i] > rep.worst) {
            rep.worst = worst_local[i];
            rep.worst_t = samples[i][0];
            rep.worst_s = samples[i][1];
        }
    return rep;
}

}  // namespace tricenter
