#pragma once

// shared fixtures for the solver-facing tests: the reference exponential
// setup (unit hyperbolic gaps, flat center) and a small grid that keeps the
// unit suite fast

#include "tricenter/config.hpp"
#include "tricenter/hypothesis.hpp"
#include "tricenter/operators.hpp"
#include "tricenter/r4_example.hpp"
#include "tricenter/solver.hpp"

namespace testsupport {

using namespace tricenter;

inline ScalarFunction identity_fn() {
    return {[](double t) { return t; }, [](double) { return 1.0; }};
}

inline RhoParams exp_setup() { return RhoParams{0.0, -1.0, 0.0, -1.0, 1.0, 0.0, identity_fn()}; }

struct ReferenceProblem {
    R4Example example;
    TrichotomySystem system;
    Perturbation f;
    LipBudget budget;
    double M, N, q;
    GridSpec grid;

    LpProblem problem() const { return LpProblem{&system, &f, grid, M, N, q}; }
};

inline GridSpec small_grid() {
    GridSpec g;
    g.t = Axis{-4.0, 4.0, 21};
    g.s = Axis{-4.0, 4.0, 11};
    g.xi = Axis{-1.0, 1.0, 5};
    g.dim_center = 2;
    g.tail_tol = 5e-4;
    return g;
}

inline ReferenceProblem make_reference(double delta, const GridSpec& grid) {
    ReferenceProblem rp;
    rp.example = make_r4_example(nabcd_from_rho(exp_setup()));
    rp.system = rp.example.system();
    rp.system.bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    rp.grid = grid;
    if (delta == 0.0) {
        rp.budget = LipBudget::zero();
        rp.f = zero_perturbation(4);
        rp.M = 1.0;
        rp.N = 0.0;
        rp.q = 0.0;
    } else {
        rp.budget = lip_budget_rho(exp_setup(), delta, 1.0);
        rp.f = make_test_perturbation(rp.budget, 4);
        const double sigma = delta, omega = delta / 2.0;  // reference closed forms
        std::tie(rp.M, rp.N) = compute_MN(sigma, omega);
        rp.q = contraction_factor(sigma, omega, rp.M, rp.N);
    }
    return rp;
}

/// converged small-grid reference solve, computed once per process
inline const SolverState& reference_solution() {
    static ReferenceProblem rp = make_reference(0.05, small_grid());
    static SolverState state = iterate_to_fixed_point(rp.problem());
    return state;
}

inline const ReferenceProblem& reference_problem() {
    static ReferenceProblem rp = make_reference(0.05, small_grid());
    return rp;
}

}  // namespace testsupport
