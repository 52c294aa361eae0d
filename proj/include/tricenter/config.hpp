#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "tricenter/grid.hpp"
#include "tricenter/hypothesis.hpp"
#include "tricenter/perturbation.hpp"
#include "tricenter/r4_example.hpp"
#include "tricenter/solver.hpp"

namespace tricenter {

/// Named reparameterization of the time axis used by the exponential and
/// polynomial families: identity or t + coeff t^3.
struct Reparam {
    std::string kind = "identity";  // "identity" | "odd-cubic"
    double coeff = 0.0;

    ScalarFunction function() const;
};

/// Complete run description: family, perturbation, grids, tolerances, seed.
/// Parsing is strict (missing fields are configuration errors) and
/// serialize-parse is the identity.
struct RunConfig {
    std::string system = "r4";

    struct Family {
        std::string kind = "exponential";  // exponential | rho | mu | polynomial
        double a = 0.0, b = -1.0, c = 0.0, d = -1.0;
        double D = 1.0, eps = 0.0;
        Reparam reparam;
    } family;

    struct Pert {
        std::string kind = "budget-sine";  // budget-sine | zero
        double delta = 0.05;
        double gamma = 1.0;
    } perturbation;

    HypothesisOptions hypothesis;
    GridSpec grid;
    SolverOptions solver;

    struct Validation {
        int invariance_samples = 200;
        double tau_max = 2.0;
        int growth_samples = 500;
        double spread_max = 3.0;      // |t - s| range of the growth check
        double box_fraction = 0.8;    // samples stay inside this fraction of the xi-box
        double min_separation = 0.5;  // smallest ||xi - xi_bar|| relative to the box
        double integrator_tol = 1e-10;
        double residual_floor = 1e-6;
    } validation;

    std::uint64_t seed = 20260809;
    std::string output = "out";

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// The concrete objects a run needs, instantiated from a config. Only the
/// four-dimensional example system realizes solve/validate runs; mu-polynomial
/// families support hypothesis checks only.
struct ProblemBundle {
    R4Example example;
    TrichotomySystem system;
    BoundFamily bounds;       // family bounds used for hypothesis checks
    LipBudget budget;
    Perturbation perturbation;
    bool solvable = false;    // true when a system realization exists
};

ProblemBundle instantiate(const RunConfig& cfg);

}  // namespace tricenter
