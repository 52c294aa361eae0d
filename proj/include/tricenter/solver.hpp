#pragma once

#include <array>
#include <vector>

#include "tricenter/operators.hpp"

namespace tricenter {

struct SolverOptions {
    double tol = 1e-8;         // stop when the d'' step drops below this
    int max_iterations = 60;
    double ratio_slack = 0.1;  // tolerated excess of empirical ratios over q
    int burn_in = 2;           // ratios before this iteration are not judged
};

struct SolverState {
    CenterField x;
    GraphField phi;
    int iterations = 0;
    std::vector<double> steps;         // d'' distance between consecutive iterates
    std::vector<double> steps_dprime;  // trajectory component of each step
    std::vector<double> steps_d;       // graph component of each step
    std::vector<double> ratios;        // steps[k] / steps[k-1]
    double error_bound = 0.0;          // q / (1 - q) * last step
    bool converged = false;
    bool coarse_warning = false;  // empirical ratio persistently above q (1 + slack)
    long extrapolation_queries = 0;
    TruncationCertificate truncation;
};

/// Banach iteration of the pair update (x, phi) <- (J(x,phi), L(x,phi)) from
/// x0 = T P xi, phi0 = 0, with a-posteriori error control. Requires a passing
/// certificate (q < 1); throws NonConvergence when the iteration budget is
/// exhausted before the step tolerance is met.
SolverState iterate_to_fixed_point(const LpProblem& p, const SolverOptions& opts = {});

/// Residuals of the discrete fields against the membership conditions of the
/// contraction space (anchoring, subspace alignment, Lipschitz constants).
struct MembershipReport {
    double zero_at_origin = 0.0;   // ||x(t,s,0)|| resp. ||phi(s,0)||
    double anchor = 0.0;           // ||x(s,s,xi) - xi|| / ||xi||
    double range_residual = 0.0;   // ||(I-P) x|| resp. ||P phi|| relative to ||xi||
    double lipschitz_excess = 0.0; // discrete Lipschitz constant / admissible constant
    bool pass = false;
};

MembershipReport center_membership(const LpProblem& p, const CenterField& x, double slack = 0.1);
MembershipReport graph_membership(const LpProblem& p, const GraphField& phi, double slack = 0.1);

/// Worst relative residual of the finite-interval transport identities that
/// carry the graph map along discrete trajectories; evaluated at off-grid
/// samples, so the result is interpolation-limited.
struct TransportReport {
    double worst = 0.0;
    double worst_t = 0.0, worst_s = 0.0;
    int samples = 0;
};

TransportReport verify_graph_transport(const LpProblem& p, const SolverState& state,
                                       const std::vector<std::array<double, 4>>& samples);

}  // namespace tricenter
