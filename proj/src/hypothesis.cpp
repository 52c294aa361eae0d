#include "tricenter/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "tricenter/errors.hpp"
#include "tricenter/quadrature.hpp"

namespace tricenter {

namespace {

constexpr double kGolden = 0.6180339887498949;

// largest budget value over a probe grid; normalizing the integrands by it
// makes sigma and omega exactly linear in the budget (the quadrature tree no
// longer depends on the budget's overall scale)
double budget_scale(const LipFn& lip, double horizon) {
    double scale = 0.0;
    for (int i = 0; i <= 64; ++i)
        scale = std::max(scale, std::abs(lip(-2.0 * horizon + 4.0 * horizon * i / 64.0)));
    scale = std::max(scale, std::abs(lip(0.0)));
    return scale;
}

// one-dimensional golden-section maximization on [lo, hi]
template <typename F>
double golden_max(const F& f, double lo, double hi, double* best_val, int iters = 48) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    const double x = (f1 > f2) ? x1 : x2;
    if (best_val) *best_val = std::max(f1, f2);
    return x;
}

struct SigmaEvaluator {
    const BoundFamily& bounds;
    const LipFn& lip;
    double tol;
    double scale;  // budget normalization, multiplied back into the result
    long* evals;

    double operator()(double t, double s) const {
        if (t == s || scale == 0.0) return 0.0;
        const double denom = bounds.alpha_at(t, s);
        auto integrand = [&](double r) {
            return bounds.alpha_at(t, r) * (lip(r) / scale) * bounds.alpha_at(r, s) / denom;
        };
        QuadOptions q;
        q.tol = tol;
        q.breakpoints = {0.0};
        QuadResult res = integrate(integrand, s, t, q);
        *evals += res.evals;
        return std::abs(res.value) * scale;
    }
};

struct OmegaEvaluator {
    const BoundFamily& bounds;
    const LipFn& lip;
    double tol;
    double scale;
    double tail_tol;
    double max_radius;
    long* evals;
    bool* quad_ok;
    bool* decaying;
    double* radius;

    double operator()(double s) const {
        if (scale == 0.0) return 0.0;
        auto fwd = [&](double r) {  // r <= s
            return bounds.beta_plus_at(s, r) * (lip(r) / scale) * bounds.alpha_at(r, s);
        };
        auto bwd = [&](double r) {  // r >= s
            return bounds.beta_minus_at(s, r) * (lip(r) / scale) * bounds.alpha_at(r, s);
        };
        HalfLineOptions h;
        h.tol = tol;
        h.tail_tol = tail_tol;
        h.max_radius = max_radius;
        h.breakpoints = {0.0};
        HalfLineResult lo = integrate_half_line(fwd, s, -1, h);
        HalfLineResult hi = integrate_half_line(bwd, s, +1, h);
        *evals += lo.evals + hi.evals;
        if (!lo.converged || !hi.converged) *quad_ok = false;
        if (!lo.decaying || !hi.decaying) *decaying = false;
        *radius = std::max({*radius, lo.truncation_radius, hi.truncation_radius});
        return (lo.value + hi.value) * scale;
    }
};

}  // namespace

std::pair<double, SupDiagnostics> compute_sigma(const BoundFamily& bounds, const LipFn& lip,
                                                const HypothesisOptions& opts) {
    SupDiagnostics diag;
    long evals = 0;
    const double scan_tol = std::max(opts.quad_tol, 0.01 * opts.convergence_tol);
    const double scale = budget_scale(lip, opts.horizon);

    auto run_pass = [&](double horizon, int points, double* out_t, double* out_s) {
        SigmaEvaluator scan{bounds, lip, scan_tol, scale, &evals};
        double best = 0.0, bt = 0.0, bs = 0.0;
        const double step = 2.0 * horizon / (points - 1);
        for (int i = 0; i < points; ++i) {
            const double t = -horizon + i * step;
            for (int j = 0; j < points; ++j) {
                const double s = -horizon + j * step;
                const double v = scan(t, s);
                if (v > best) {
                    best = v;
                    bt = t;
                    bs = s;
                }
            }
        }
        // golden-section refinement around the grid argmax, full tolerance
        SigmaEvaluator fine{bounds, lip, opts.quad_tol, scale, &evals};
        double t_star = bt, s_star = bs, val = fine(bt, bs);
        for (int round = 0; round < 2; ++round) {
            double v;
            t_star = golden_max([&](double t) { return fine(t, s_star); },
                                std::max(t_star - step, -horizon),
                                std::min(t_star + step, horizon), &v);
            s_star = golden_max([&](double s) { return fine(t_star, s); },
                                std::max(s_star - step, -horizon),
                                std::min(s_star + step, horizon), &v);
            val = std::max(val, v);
        }
        if (out_t) *out_t = t_star;
        if (out_s) *out_s = s_star;
        return val;
    };

    diag.value_base = run_pass(opts.horizon, opts.sup_points, &diag.arg_t, &diag.arg_s);
    diag.value_wide = run_pass(2.0 * opts.horizon, 2 * opts.sup_points - 1, nullptr, nullptr);
    diag.value_fine = run_pass(opts.horizon, 2 * opts.sup_points - 1, nullptr, nullptr);
    diag.evals = evals;
    const double value = std::max({diag.value_base, diag.value_wide, diag.value_fine});
    diag.converged = std::abs(diag.value_wide - diag.value_base) < opts.convergence_tol &&
                     std::abs(diag.value_fine - diag.value_base) < opts.convergence_tol;
    diag.diverging = diag.value_wide - diag.value_base >= opts.convergence_tol;
    return {value, diag};
}

std::pair<double, SupDiagnostics> compute_sigma(const BoundFamily& bounds, const LipBudget& lip,
                                                const HypothesisOptions& opts) {
    return compute_sigma(bounds, LipFn([&lip](double r) { return lip.at(r); }), opts);
}

std::pair<double, SupDiagnostics> compute_omega(const BoundFamily& bounds, const LipFn& lip,
                                                const HypothesisOptions& opts) {
    SupDiagnostics diag;
    long evals = 0;
    bool quad_ok = true, decaying = true;
    double radius = 0.0;
    const double scan_tol = std::max(opts.quad_tol, 0.01 * opts.convergence_tol);
    const double scale = budget_scale(lip, opts.horizon);

    auto run_pass = [&](double horizon, int points, double quad_tol, double* out_s) {
        OmegaEvaluator eval{bounds, lip,      quad_tol,  scale, opts.tail_tol, opts.max_radius,
                            &evals, &quad_ok, &decaying, &radius};
        double best = 0.0, bs = 0.0;
        const double step = 2.0 * horizon / (points - 1);
        for (int j = 0; j < points; ++j) {
            const double s = -horizon + j * step;
            const double v = eval(s);
            if (v > best) {
                best = v;
                bs = s;
            }
        }
        OmegaEvaluator fine{bounds, lip,      opts.quad_tol, scale, opts.tail_tol,
                            opts.max_radius,  &evals,        &quad_ok, &decaying, &radius};
        double v = best;
        const double s_star = golden_max([&](double s) { return fine(s); },
                                         std::max(bs - step, -horizon),
                                         std::min(bs + step, horizon), &v);
        if (out_s) *out_s = s_star;
        return std::max(best, v);
    };

    diag.value_base = run_pass(opts.horizon, opts.sup_points, scan_tol, &diag.arg_s);
    diag.value_wide = run_pass(2.0 * opts.horizon, 2 * opts.sup_points - 1, scan_tol, nullptr);
    diag.value_fine = run_pass(opts.horizon, 2 * opts.sup_points - 1, opts.quad_tol, nullptr);
    diag.evals = evals;
    diag.quad_converged = quad_ok;
    diag.truncation_radius = radius;
    const double value = std::max({diag.value_base, diag.value_wide, diag.value_fine});
    diag.converged = quad_ok && decaying &&
                     std::abs(diag.value_wide - diag.value_base) < opts.convergence_tol &&
                     std::abs(diag.value_fine - diag.value_base) < opts.convergence_tol;
    diag.diverging = !decaying || diag.value_wide - diag.value_base >= opts.convergence_tol;
    return {value, diag};
}

std::pair<double, SupDiagnostics> compute_omega(const BoundFamily& bounds, const LipBudget& lip,
                                                const HypothesisOptions& opts) {
    return compute_omega(bounds, LipFn([&lip](double r) { return lip.at(r); }), opts);
}

std::pair<double, double> compute_MN(double sigma, double omega) {
    if (sigma < 0.0 || omega < 0.0) throw InvalidParams("sigma and omega must be nonnegative");
    if (!(2.0 * sigma + 2.0 * omega < 1.0))
        throw HypothesisViolated("smallness condition 2*sigma + 2*omega < 1 fails: sigma = " +
                                 std::to_string(sigma) + ", omega = " + std::to_string(omega));
    // continuity limits of the closed forms when either quantity vanishes
    if (sigma == 0.0 && omega == 0.0) return {1.0, 0.0};
    if (omega == 0.0) return {1.0 / (1.0 - sigma), 0.0};
    if (sigma == 0.0) return {1.0, omega / (1.0 - omega)};

    const double disc = 1.0 - 2.0 * sigma - 2.0 * omega + (sigma - omega) * (sigma - omega);
    const double root = std::sqrt(disc);
    const double M = 2.0 / (1.0 - sigma + omega + root);
    const double N = 2.0 * omega / (1.0 - sigma - omega + root);

    // identity check in residual form, which stays meaningful when sigma or
    // omega is tiny and the quotient forms lose digits to cancellation
    const double r3 = M * (1.0 + N);
    if (std::abs(sigma * r3 - (M - 1.0)) > 1e-10 * M ||
        std::abs(omega * r3 - N) > 1e-10 * (1.0 + N))
        throw Error("internal identity (M-1)/sigma = N/omega = M(1+N) failed");
    return {M, N};
}

double contraction_factor(double sigma, double omega, double M, double N) {
    return (sigma + omega) * std::max(1.0 + N, M);
}

nlohmann::json HypothesisReport::to_json() const {
    auto sup_json = [](const SupDiagnostics& d) {
        return nlohmann::json{{"value_base", d.value_base},
                              {"value_wide", d.value_wide},
                              {"value_fine", d.value_fine},
                              {"arg_t", d.arg_t},
                              {"arg_s", d.arg_s},
                              {"truncation_radius", d.truncation_radius},
                              {"evals", d.evals},
                              {"quad_converged", d.quad_converged},
                              {"converged", d.converged},
                              {"diverging", d.diverging}};
    };
    nlohmann::json limits_json = nlohmann::json::array();
    for (const auto& tr : limits.per_s)
        limits_json.push_back({{"s", tr.s},
                               {"last_forward", tr.last_forward},
                               {"last_backward", tr.last_backward},
                               {"pass", tr.pass()},
                               {"forward_horizon_suspect", tr.forward_horizon_suspect},
                               {"backward_horizon_suspect", tr.backward_horizon_suspect}});
    return nlohmann::json{
        {"sigma", sigma},
        {"omega", omega},
        {"M", M},
        {"N", N},
        {"q", q},
        {"limits_ok", limits_ok},
        {"smallness_ok", smallness_ok},
        {"converged", converged},
        {"pass", pass},
        {"reasons", reasons},
        {"sigma_diagnostics", sup_json(sigma_diag)},
        {"omega_diagnostics", sup_json(omega_diag)},
        {"limits", limits_json},
        {"options",
         {{"horizon", options.horizon},
          {"sup_points", options.sup_points},
          {"quad_tol", options.quad_tol},
          {"tail_tol", options.tail_tol},
          {"convergence_tol", options.convergence_tol},
          {"limit_tol", options.limit_tol},
          {"limit_horizon", options.limit_horizon},
          {"max_radius", options.max_radius}}}};
}

HypothesisReport assemble_report(const BoundFamily& bounds, const LipBudget& lip,
                                 const HypothesisOptions& opts) {
    HypothesisReport rep;
    rep.options = opts;
    const double limit_horizon = opts.limit_horizon > 0.0 ? opts.limit_horizon : 4.0 * opts.horizon;

    std::vector<double> s_samples;
    for (int i = 0; i < 9; ++i) s_samples.push_back(-opts.horizon / 3.0 + i * opts.horizon / 12.0);
    rep.limits = check_vanishing_limits(bounds, s_samples, limit_horizon, opts.limit_tol);
    rep.limits_ok = rep.limits.pass;
    if (!rep.limits_ok) rep.reasons.push_back("vanishing-limit condition fails on sampled s");

    auto [sigma, sdiag] = compute_sigma(bounds, lip, opts);
    auto [omega, odiag] = compute_omega(bounds, lip, opts);
    rep.sigma = sigma;
    rep.omega = omega;
    rep.sigma_diag = sdiag;
    rep.omega_diag = odiag;
    if (sdiag.diverging) rep.reasons.push_back("sigma estimate still growing with the horizon");
    if (odiag.diverging) rep.reasons.push_back("omega estimate still growing or tail not decaying");
    if (!sdiag.converged || !odiag.converged)
        rep.reasons.push_back("sup estimates not converged under horizon/grid doubling");

    rep.smallness_ok = 2.0 * (sigma + omega) < 1.0;
    if (!rep.smallness_ok) {
        rep.reasons.push_back("smallness condition 2*sigma + 2*omega < 1 fails");
        rep.M = std::numeric_limits<double>::quiet_NaN();
        rep.N = std::numeric_limits<double>::quiet_NaN();
        rep.q = std::numeric_limits<double>::infinity();
    } else {
        std::tie(rep.M, rep.N) = compute_MN(sigma, omega);
        rep.q = contraction_factor(sigma, omega, rep.M, rep.N);
    }

    rep.converged = sdiag.converged && odiag.converged;
    rep.pass = rep.limits_ok && rep.smallness_ok && rep.converged;
    return rep;
}

}  // namespace tricenter
