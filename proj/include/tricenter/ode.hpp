#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace tricenter {

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;   // 0 = choose automatically
    double min_step = 1e-13;     // relative to interval length
    long max_steps = 2'000'000;
    /// Times the integrator must not step across (one-sided coefficient jumps).
    std::vector<double> breakpoints;
};

struct OdeStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

/// Integrate y' = rhs(t, y) from t0 to t1 (either direction) with the adaptive
/// Dormand-Prince 5(4) pair. Throws OdeError on step underflow or budget
/// exhaustion.
Eigen::VectorXd integrate_ode(const OdeRhs& rhs, double t0, double t1, Eigen::VectorXd y0,
                              const OdeOptions& opts = {}, OdeStats* stats = nullptr);

}  // namespace tricenter
