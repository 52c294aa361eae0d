#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "tricenter/families.hpp"
#include "tricenter/norms.hpp"

namespace tricenter {

/// Nonlinear perturbation f(t, v) with a per-time Lipschitz budget it is
/// supposed to respect (f(t, 0) = 0 always).
struct Perturbation {
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> f;
    LipBudget budget;
    bool is_zero = false;

    Eigen::VectorXd operator()(double t, const Eigen::VectorXd& v) const { return f(t, v); }
};

Perturbation zero_perturbation(int dim);

/// budget(t) times the component-rotated sine map v -> (sin v_2, ..., sin v_1):
/// exactly 1-Lipschitz in the max norm, vanishes at 0, and couples all
/// coordinates so the resulting manifold is not flat.
Perturbation make_test_perturbation(const LipBudget& budget, int dim = 4);

struct LipschitzAuditReport {
    double worst_ratio = 0.0;   // max over pairs of Lip-ratio / budget(t)
    double worst_growth = 0.0;  // max over points of ||f(t,x)|| / (budget(t) ||x||)
    double worst_zero = 0.0;    // max over t of ||f(t, 0)||
    int samples = 0;
    bool pass = false;
};

/// Monte-Carlo audit of the budget: sampled difference quotients must stay
/// below budget(t), and ||f(t, x)|| <= budget(t) ||x||.
LipschitzAuditReport audit_perturbation(const Perturbation& f, int dim, double box_radius,
                                        double time_radius, int samples, std::uint64_t seed,
                                        const NormSpec& norm = NormSpec::max_norm());

}  // namespace tricenter
