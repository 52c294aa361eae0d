#include "tricenter/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tricenter/errors.hpp"
#include "tricenter/ode.hpp"

namespace tricenter {

Eigen::VectorXd flow_psi(const TrichotomySystem& sys, const Perturbation& f, double tau, double s,
                         const Eigen::VectorXd& v_s, double integrator_tol) {
    if (!sys.generator) throw InvalidParams("system has no generator to flow with");
    if (tau == 0.0) return v_s;
    OdeOptions opts;
    opts.rel_tol = integrator_tol;
    opts.abs_tol = 0.01 * integrator_tol;
    opts.breakpoints = {0.0};
    auto rhs = [&sys, &f](double t, const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return sys.generator(t) * v + f.f(t, v);
    };
    return integrate_ode(rhs, s, s + tau, v_s, opts);
}

InvarianceReport invariance_residual(const TrichotomySystem& sys, const Perturbation& f,
                                     const GraphField& phi,
                                     const std::vector<std::array<double, 4>>& samples,
                                     double floor, double integrator_tol) {
    InvarianceReport rep;
    rep.samples.resize(samples.size());
    const GridSpec& g = phi.grid();
    const double box = std::max(std::abs(g.xi.lo), std::abs(g.xi.hi));

#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < samples.size(); ++i) {
        InvarianceSample& row = rep.samples[i];
        row.tau = samples[i][0];
        row.s = samples[i][1];
        row.xi[0] = samples[i][2];
        row.xi[1] = samples[i][3];

        Eigen::VectorXd start = sys.embed_center(row.xi);
        Eigen::VectorXd phi_s(sys.dim);
        phi.eval(row.s, row.xi, phi_s.data());
        start += phi_s;

        const Eigen::VectorXd end = flow_psi(sys, f, row.tau, row.s, start, integrator_tol);
        const double t_end = row.s + row.tau;
        double end_coords[3];
        sys.center_coords(sys.splitting.P(t_end) * end, end_coords);

        bool outside = false;
        for (int d = 0; d < sys.dim_center; ++d) outside = outside || std::abs(end_coords[d]) > box;
        if (outside) {
            row.skipped = true;
            continue;
        }

        Eigen::VectorXd phi_end(sys.dim);
        phi.eval(t_end, end_coords, phi_end.data());
        const Eigen::VectorXd hyper =
            (sys.splitting.Qp(t_end) + sys.splitting.Qm(t_end)) * end;
        const double nxi = vector_norm(sys.embed_center(row.xi), sys.norm);
        row.residual =
            vector_norm(Eigen::VectorXd(hyper - phi_end), sys.norm) / std::max(nxi, floor);
    }

    for (const auto& row : rep.samples) {
        if (row.skipped) {
            ++rep.skipped;
            continue;
        }
        ++rep.used;
        rep.worst = std::max(rep.worst, row.residual);
    }
    return rep;
}

GrowthReport lipschitz_growth_check(const TrichotomySystem& sys, const Perturbation& f,
                                    const GraphField& phi, const HypothesisReport& report,
                                    const std::vector<std::array<double, 6>>& samples,
                                    double tolerance, double integrator_tol) {
    if (!(report.sigma > 0.0) || !(report.omega > 0.0))
        throw InvalidParams(
            "growth check undefined when sigma or omega vanish (N / omega has no value)");
    const double rate = report.N / report.omega;

    for (const auto& row : samples)
        if (row[2] == row[4] && row[3] == row[5])
            throw InvalidParams("growth check requires xi != xi_bar");

    GrowthReport rep;
    rep.samples = static_cast<int>(samples.size());
    std::vector<double> ratio(samples.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < samples.size(); ++i) {
        const double t = samples[i][0], s = samples[i][1];
        const double xi_a[3] = {samples[i][2], samples[i][3], 0.0};
        const double xi_b[3] = {samples[i][4], samples[i][5], 0.0};
        const Eigen::VectorXd ea = sys.embed_center(xi_a), eb = sys.embed_center(xi_b);
        const double dxi = vector_norm(Eigen::VectorXd(ea - eb), sys.norm);

        Eigen::VectorXd pa(sys.dim), pb(sys.dim);
        phi.eval(s, xi_a, pa.data());
        phi.eval(s, xi_b, pb.data());
        const Eigen::VectorXd va = flow_psi(sys, f, t - s, s, ea + pa, integrator_tol);
        const Eigen::VectorXd vb = flow_psi(sys, f, t - s, s, eb + pb, integrator_tol);

        const double bound = rate * sys.bounds.alpha_at(t, s) * dxi;
        ratio[i] = vector_norm(Eigen::VectorXd(va - vb), sys.norm) / bound;
    }

    for (size_t i = 0; i < samples.size(); ++i)
        if (ratio[i] > rep.worst_ratio) {
            rep.worst_ratio = ratio[i];
            rep.worst_t = samples[i][0];
            rep.worst_s = samples[i][1];
        }
    rep.pass = rep.worst_ratio <= 1.0 + tolerance;
    return rep;
}

std::vector<std::array<double, 4>> sample_invariance(const GridSpec& g, int count, double tau_max,
                                                     double box_fraction, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double box = box_fraction * std::max(std::abs(g.xi.lo), std::abs(g.xi.hi));
    const double s_window = std::min(g.s.hi, g.t.hi - tau_max);
    std::uniform_real_distribution<double> stime(-s_window, s_window);
    std::uniform_real_distribution<double> tau(-tau_max, tau_max);
    std::uniform_real_distribution<double> xi(-box, box);

    std::vector<std::array<double, 4>> rows;
    rows.reserve(count);
    while (static_cast<int>(rows.size()) < count) {
        const double s = stime(rng), dt = tau(rng);
        if (std::abs(s + dt) > g.t.hi) continue;
        rows.push_back({dt, s, xi(rng), xi(rng)});
    }
    return rows;
}

std::vector<std::array<double, 6>> sample_growth(const GridSpec& g, int count, double spread_max,
                                                 double box_fraction, double min_separation,
                                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double radius = std::max(std::abs(g.xi.lo), std::abs(g.xi.hi));
    const double box = box_fraction * radius;
    const double sep = min_separation * radius;
    const double s_window = std::min(g.s.hi, g.t.hi - spread_max);
    std::uniform_real_distribution<double> stime(-s_window, s_window);
    std::uniform_real_distribution<double> spread(-spread_max, spread_max);
    std::uniform_real_distribution<double> xi(-box, box);

    std::vector<std::array<double, 6>> rows;
    rows.reserve(count);
    while (static_cast<int>(rows.size()) < count) {
        const double s = stime(rng), t = s + spread(rng);
        if (std::abs(t) > g.t.hi) continue;
        const double a1 = xi(rng), a2 = xi(rng), b1 = xi(rng), b2 = xi(rng);
        if (std::max(std::abs(a1 - b1), std::abs(a2 - b2)) < sep) continue;
        rows.push_back({t, s, a1, a2, b1, b2});
    }
    return rows;
}

std::vector<std::array<double, 4>> sample_transport(const GridSpec& g, int count, double window,
                                                    double box_fraction, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double radius = std::max(std::abs(g.xi.lo), std::abs(g.xi.hi));
    const double box = box_fraction * radius;
    const double w = std::min({window, g.s.hi, g.t.hi});
    std::uniform_real_distribution<double> times(-w, w);
    std::uniform_real_distribution<double> xi(-box, box);

    std::vector<std::array<double, 4>> rows;
    rows.reserve(count);
    while (static_cast<int>(rows.size()) < count) {
        const double x1 = xi(rng), x2 = xi(rng);
        if (std::max(std::abs(x1), std::abs(x2)) < 0.1 * radius) continue;
        rows.push_back({times(rng), times(rng), x1, x2});
    }
    return rows;
}

}  // namespace tricenter
