#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tricenter/bounds.hpp"

namespace tricenter {

/// Scalar function of time with an optional closed-form derivative. When no
/// derivative is supplied, central differences with step 1e-6 * (1 + |t|) are
/// used (one-sided at t = 0, where the nonuniformity factors may have a kink).
struct ScalarFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  // optional

    double operator()(double t) const { return value(t); }
    double deriv(double t) const;
    double deriv_one_sided(double t, int side) const;  // side = +1 / -1

    static ScalarFunction constant(double c);
};

/// Growth functions g_a..g_d (> 0, C^1) and nonuniformity factors eps_a..eps_d
/// (>= 1, C^1 away from 0 with one-sided derivatives at 0).
struct NabcdParams {
    ScalarFunction ga, gb, gc, gd;
    ScalarFunction ea, eb, ec, ed;
};

/// Exponential rates against an odd increasing reparameterization rho.
struct RhoParams {
    double a = 0, b = 0, c = 0, d = 0;
    double D = 1.0;
    double eps = 0.0;
    ScalarFunction rho;  // odd, increasing, rho(t) -> +inf
};

/// Polynomial exponents against an increasing unbounded reparameterization mu.
struct MuParams {
    double a = 0, b = 0, c = 0, d = 0;
    double D = 1.0;
    double eps = 0.0;
    ScalarFunction mu;  // mu' > 0, mu(+-inf) = +-inf
};

/// Maximal admissible Lipschitz constant of the perturbation per time.
struct LipBudget {
    std::function<double(double)> budget;  // r -> bound on Lip(f_r), >= 0
    double delta = 0.0;
    FamilyTag tag = FamilyTag::Generic;
    nlohmann::json params;

    double at(double r) const;
    static LipBudget zero();
};

struct ConditionReport {
    double worst_ratio = 0.0;  // minimum of the checked quantity over samples
    double arg_t = 0.0, arg_s = 0.0;
    bool pass = false;
};

/// Growth-compatibility condition the (g_a, g_c) pair must satisfy on t >= s
/// for the three-branch alpha to dominate the center block.
ConditionReport check_nabcd_condition(const NabcdParams& p,
                                      const std::vector<std::pair<double, double>>& samples,
                                      double tolerance = 1e-9);

/// Default sample grids for parameter-condition checks: 201 log-spaced points
/// per axis over [-horizon, horizon].
std::vector<double> condition_axis(double horizon);
std::vector<std::pair<double, double>> condition_grid_ge(double horizon);  // t >= s pairs

BoundFamily make_nabcd_bounds(const NabcdParams& p, double check_horizon = 10.0,
                              bool* condition_ok = nullptr);
BoundFamily make_rho_bounds(const RhoParams& p);
BoundFamily make_exponential_bounds(double a, double b, double c, double d, double D, double eps);
BoundFamily make_mu_polynomial_bounds(const MuParams& p);
BoundFamily make_polynomial_bounds(double a, double b, double c, double d, double D, double eps);

/// Budget of the nonuniform-family admissibility test: delta times the minimum
/// of the two derivative terms and gamma(r). Requires delta < 1/6 and the
/// positivity of both derivative terms at the sampled times.
LipBudget lip_budget_nabcd(const NabcdParams& p, double delta,
                           std::function<double(double)> gamma, double check_horizon = 10.0);

/// Same budget with the canonical gamma built from the params and an anchor
/// time; the gamma integrals against eps_a and eps_c are then at most 1.
LipBudget lip_budget_nabcd_default_gamma(const NabcdParams& p, double delta, double anchor_s,
                                         double check_horizon = 10.0);

/// gamma(r) achieving unit mass for the rho-exponential budget.
std::function<double(double)> rho_gamma_function(const RhoParams& p, double gamma);

LipBudget lip_budget_rho(const RhoParams& p, double delta, double gamma);

/// The rho budget formula without the delta < 1/6 admissibility gate; used by
/// hypothesis-checking paths that deliberately probe inadmissible deltas. The
/// structural gamma/exponent conditions are still enforced.
LipBudget lip_budget_rho_formula(const RhoParams& p, double delta, double gamma);
LipBudget lip_budget_mu(const MuParams& p, double delta, double gamma);

/// Smallest delta threshold guaranteeing 2*sigma + 2*omega < 1 for the
/// mu-polynomial budget, from the closed-form sigma and omega majorants.
double mu_delta_threshold(const MuParams& p, double gamma);

/// Closed-form majorant of the half-line integral below.
double lemma4_bound(double lambda, double nu, double eps, double p);

/// Adaptive quadrature of int_0^inf (1+tau)^lambda (|tau+p|+1)^nu (|p|+1)^eps dtau,
/// computed under the substitution tau = e^u - 1 so that near-critical exponents
/// keep a manageable truncation range.
double lemma4_integral(double lambda, double nu, double eps, double p, double quad_tol = 1e-11);

}  // namespace tricenter
