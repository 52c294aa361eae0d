#pragma once

#include <array>
#include <vector>

#include "tricenter/fields.hpp"
#include "tricenter/hypothesis.hpp"
#include "tricenter/perturbation.hpp"
#include "tricenter/system.hpp"

namespace tricenter {

/// State of the perturbed equation v' = A(t) v + f(t, v) at time s + tau,
/// started from v_s at time s. Requires the system's generator.
Eigen::VectorXd flow_psi(const TrichotomySystem& sys, const Perturbation& f, double tau, double s,
                         const Eigen::VectorXd& v_s, double integrator_tol = 1e-10);

struct InvarianceSample {
    double tau = 0.0, s = 0.0;
    double xi[3] = {0, 0, 0};
    double residual = 0.0;
    bool skipped = false;  // flowed center coordinates left the xi-box
};

struct InvarianceReport {
    double worst = 0.0;
    int used = 0;
    int skipped = 0;
    std::vector<InvarianceSample> samples;
};

/// Flows graph points by tau and measures how far the endpoint's hyperbolic
/// part drifts from the graph over the endpoint's center coordinates, relative
/// to max(||xi||, floor).
InvarianceReport invariance_residual(const TrichotomySystem& sys, const Perturbation& f,
                                     const GraphField& phi,
                                     const std::vector<std::array<double, 4>>& samples,
                                     double floor = 1e-6, double integrator_tol = 1e-10);

struct GrowthReport {
    double worst_ratio = 0.0;
    double worst_t = 0.0, worst_s = 0.0;
    int samples = 0;
    bool pass = false;
};

/// Flows pairs of graph points and checks the Lipschitz growth bound
/// ||Delta Psi|| <= (N / omega) alpha_{t,s} ||Delta xi|| up to the tolerance.
/// Each sample row is (t, s, xi, xi_bar) with xi != xi_bar.
GrowthReport lipschitz_growth_check(const TrichotomySystem& sys, const Perturbation& f,
                                    const GraphField& phi, const HypothesisReport& report,
                                    const std::vector<std::array<double, 6>>& samples,
                                    double tolerance = 0.01, double integrator_tol = 1e-10);

/// Deterministic sample draws for the validation runs (dim_center = 2).
/// Invariance rows (tau, s, xi1, xi2): anchor times keep s and s + tau inside
/// the represented time range, xi inside box_fraction of the xi-box.
std::vector<std::array<double, 4>> sample_invariance(const GridSpec& g, int count, double tau_max,
                                                     double box_fraction, std::uint64_t seed);

/// Growth rows (t, s, xi1, xi2, xibar1, xibar2) with |t - s| <= spread_max and
/// ||xi - xibar|| at least min_separation times the box radius.
std::vector<std::array<double, 6>> sample_growth(const GridSpec& g, int count, double spread_max,
                                                 double box_fraction, double min_separation,
                                                 std::uint64_t seed);

/// Transport rows (t, s, xi1, xi2) inside |t|, |s| <= window.
std::vector<std::array<double, 4>> sample_transport(const GridSpec& g, int count, double window,
                                                    double box_fraction, std::uint64_t seed);

}  // namespace tricenter
