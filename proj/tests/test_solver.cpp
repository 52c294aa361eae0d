#include <doctest.h>

#include <cmath>

#include "tricenter/errors.hpp"
#include "tricenter/solver.hpp"
#include "tricenter/validation.hpp"
#include "support.hpp"

using namespace tricenter;
using namespace testsupport;

TEST_CASE("the hypothesis gate refuses q >= 1") {
    auto rp = make_reference(0.05, small_grid());
    auto problem = rp.problem();
    problem.q = 1.2;
    CHECK_THROWS_AS(iterate_to_fixed_point(problem), HypothesisViolated);
}

TEST_CASE("zero perturbation converges in one exact step") {
    auto rp = make_reference(0.0, small_grid());
    auto state = iterate_to_fixed_point(rp.problem());
    CHECK(state.converged);
    CHECK(state.iterations == 1);
    CHECK(state.steps.back() == 0.0);
    CHECK(state.error_bound == 0.0);

    // graph stays identically zero and the trajectory is the center flow
    GraphField zero_phi = zero_graph_field(rp.problem());
    CHECK(metric_d(state.phi, zero_phi) <= 1e-10);
    CenterField x0 = initial_center_field(rp.problem());
    CHECK(metric_dprime(state.x, x0, rp.system.bounds) <= 1e-8);
}

TEST_CASE("reference setup contracts at the certified rate") {
    const auto& rp = reference_problem();
    const auto& state = reference_solution();
    CHECK(state.converged);
    CHECK(state.iterations <= 12);
    for (size_t k = 1; k < state.ratios.size(); ++k)
        CHECK(state.ratios[k] <= rp.q * 1.1);
    CHECK_FALSE(state.coarse_warning);
    CHECK(state.error_bound <= rp.q / (1.0 - rp.q) * 1e-8);
}

TEST_CASE("converged fields satisfy the membership conditions") {
    const auto& rp = reference_problem();
    const auto& state = reference_solution();
    auto problem = rp.problem();
    auto cm = center_membership(problem, state.x);
    CHECK(cm.pass);
    CHECK(cm.zero_at_origin == 0.0);
    CHECK(cm.anchor <= 1e-12);
    CHECK(cm.range_residual <= 1e-12);
    CHECK(cm.lipschitz_excess <= 1.0 + 0.1);

    auto gm = graph_membership(problem, state.phi);
    CHECK(gm.pass);
    CHECK(gm.zero_at_origin == 0.0);
    CHECK(gm.range_residual <= 1e-12);
    CHECK(gm.lipschitz_excess <= 1.0 + 0.1);
}

TEST_CASE("iteration budget exhaustion raises a non-convergence error") {
    auto rp = make_reference(0.05, small_grid());
    SolverOptions opts;
    opts.max_iterations = 1;
    CHECK_THROWS_AS(iterate_to_fixed_point(rp.problem(), opts), NonConvergence);
}

TEST_CASE("transport identities hold at interpolation accuracy") {
    const auto& rp = reference_problem();
    const auto& state = reference_solution();
    auto samples = sample_transport(rp.grid, 60, 2.0, 0.8, 4242);
    auto rep = verify_graph_transport(rp.problem(), state, samples);
    CHECK(rep.worst <= 1.5e-3);  // the small unit grid is deliberately coarse
}

TEST_CASE("transport residual vanishes for the zero perturbation") {
    auto rp = make_reference(0.0, small_grid());
    auto state = iterate_to_fixed_point(rp.problem());
    auto samples = sample_transport(rp.grid, 20, 2.0, 0.8, 7);
    auto rep = verify_graph_transport(rp.problem(), state, samples);
    CHECK(rep.worst <= 1e-12);
}
