#pragma once

#include <functional>

#include <nlohmann/json.hpp>

#include "tricenter/bounds.hpp"
#include "tricenter/families.hpp"

namespace tricenter {

struct HypothesisOptions {
    double horizon = 15.0;        // sup over (t, s) in [-horizon, horizon]
    int sup_points = 101;         // grid points per axis before refinement
    double quad_tol = 1e-11;      // quadrature tolerance (on the normalized integrand)
    double tail_tol = 1e-12;      // half-line truncation threshold
    double convergence_tol = 1e-6;  // accepted movement under horizon/grid doubling
    double limit_tol = 1e-8;      // vanishing-limit acceptance threshold
    double limit_horizon = 0.0;   // 0 = 4 * horizon
    double max_radius = 1e30;     // half-line integration gives up beyond this
};

/// Where and how a supremum estimate was found, plus the doubling diagnostics
/// that back its convergence flag.
struct SupDiagnostics {
    double value_base = 0.0;   // horizon, base grid
    double value_wide = 0.0;   // doubled horizon
    double value_fine = 0.0;   // doubled grid density
    double arg_t = 0.0;
    double arg_s = 0.0;
    double truncation_radius = 0.0;  // omega only: largest half-line radius used
    long evals = 0;
    bool quad_converged = true;
    bool converged = false;    // doubling moved the estimate < convergence_tol
    bool diverging = false;    // estimate still growing with the horizon / tail not decaying
};

using LipFn = std::function<double(double)>;

/// Supremal weighted transfer integral along the center direction: the sup
/// over (t, s) of |int_s^t alpha_{t,r} Lip(f_r) alpha_{r,s} / alpha_{t,s} dr|.
/// The estimate is a lower bound, flagged converged when doubling the horizon
/// or the grid moves it by less than the configured tolerance.
std::pair<double, SupDiagnostics> compute_sigma(const BoundFamily& bounds, const LipFn& lip,
                                                const HypothesisOptions& opts = {});
std::pair<double, SupDiagnostics> compute_sigma(const BoundFamily& bounds, const LipBudget& lip,
                                                const HypothesisOptions& opts = {});

/// Supremal hyperbolic coupling: sup over s of the two half-line integrals of
/// beta+-_{s,r} Lip(f_r) alpha_{r,s}.
std::pair<double, SupDiagnostics> compute_omega(const BoundFamily& bounds, const LipFn& lip,
                                                const HypothesisOptions& opts = {});
std::pair<double, SupDiagnostics> compute_omega(const BoundFamily& bounds, const LipBudget& lip,
                                                const HypothesisOptions& opts = {});

/// Contraction-space constants from sigma and omega. Uses the cancellation-free
/// forms M = 2 / (1 - sigma + omega + S), N = 2 omega / (1 - sigma - omega + S)
/// with S the square root of 1 - 2 sigma - 2 omega + (sigma - omega)^2, and the
/// continuity limits when sigma or omega vanishes. Throws HypothesisViolated if
/// 2 sigma + 2 omega >= 1. The identity (M-1)/sigma = N/omega = M(1+N) is
/// verified internally to 1e-10 relative.
std::pair<double, double> compute_MN(double sigma, double omega);

/// q = (sigma + omega) * max(1 + N, M); the fixed-point iteration contracts at
/// this rate when 2 sigma + 2 omega < 1.
double contraction_factor(double sigma, double omega, double M, double N);

struct HypothesisReport {
    double sigma = 0.0;
    double omega = 0.0;
    double M = 1.0;
    double N = 0.0;
    double q = 0.0;
    bool limits_ok = false;
    bool smallness_ok = false;   // 2 sigma + 2 omega < 1
    bool converged = false;      // both sup estimates and their quadratures
    bool pass = false;
    std::vector<std::string> reasons;  // populated when pass is false
    SupDiagnostics sigma_diag, omega_diag;
    LimitsReport limits;
    HypothesisOptions options;

    nlohmann::json to_json() const;
};

HypothesisReport assemble_report(const BoundFamily& bounds, const LipBudget& lip,
                                 const HypothesisOptions& opts = {});

}  // namespace tricenter
