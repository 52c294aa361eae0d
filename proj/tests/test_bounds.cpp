#include <doctest.h>

#include <cmath>
#include <random>

#include "tricenter/bounds.hpp"
#include "tricenter/errors.hpp"
#include "tricenter/families.hpp"

using namespace tricenter;

namespace {

Eigen::MatrixXd coord_proj(std::initializer_list<int> comps) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    for (int c : comps) m(c, c) = 1.0;
    return m;
}

InvariantSplitting coordinate_splitting() {
    InvariantSplitting sp;
    sp.dim = 4;
    sp.P = [](double) { return coord_proj({0, 1}); };
    sp.Qp = [](double) { return coord_proj({2}); };
    sp.Qm = [](double) { return coord_proj({3}); };
    return sp;
}

EvolutionOperator hyperbolic_center_flow() {
    return EvolutionOperator::closed_form(4, [](double t, double s) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        m(2, 2) = std::exp(-(t - s));
        m(3, 3) = std::exp(-(s - t));
        return m;
    });
}

std::vector<std::pair<double, double>> random_pairs(int n, double radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n; ++i) out.emplace_back(u(rng), u(rng));
    return out;
}

}  // namespace

TEST_CASE("exponential bounds dominate the matching diagonal flow") {
    auto bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    auto rep = check_bounds(hyperbolic_center_flow(), coordinate_splitting(), bounds,
                            random_pairs(500, 5.0, 42), 1e-10);
    CHECK(rep.pass);
    CHECK(rep.rel_margin <= 1e-12);
}

TEST_CASE("halving alpha breaks the center condition") {
    auto bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    BoundFamily halved = bounds;
    halved.alpha = [base = bounds.alpha](double t, double s) { return 0.5 * base(t, s); };
    auto rep = check_bounds(hyperbolic_center_flow(), coordinate_splitting(), halved,
                            random_pairs(100, 5.0, 43), 1e-10);
    CHECK(rep.margin_alpha > 0.0);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("non-positive bounds are invalid") {
    auto bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    bounds.alpha = [](double, double) { return 0.0; };
    CHECK_THROWS_AS(check_bounds(hyperbolic_center_flow(), coordinate_splitting(), bounds,
                                 {{1.0, 0.0}}),
                    InvalidParams);
}

TEST_CASE("beta domain restrictions are enforced") {
    auto bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    CHECK_THROWS_AS(bounds.beta_plus_at(0.0, 1.0), InvalidParams);
    CHECK_THROWS_AS(bounds.beta_minus_at(1.0, 0.0), InvalidParams);
}

TEST_CASE("vanishing limits hold for decaying exponential products") {
    auto bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    auto rep = check_vanishing_limits(bounds, {-2.0, 0.0, 2.0}, 60.0, 1e-8);
    CHECK(rep.pass);
    for (const auto& tr : rep.per_s) {
        CHECK(tr.last_forward <= 1e-8);
        CHECK(tr.last_backward <= 1e-8);
    }
}

TEST_CASE("a constant product fails with a violated-condition diagnostic") {
    // a + b = 0 makes beta-_{s,r} alpha_{r,s} identically D^2
    auto bounds = make_exponential_bounds(0.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    auto rep = check_vanishing_limits(bounds, {0.0}, 60.0, 1e-8);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.per_s[0].forward_horizon_suspect);  // flat trend, not a horizon issue
}

TEST_CASE("power-law decay passes at a tolerance the horizon can reach") {
    auto bounds = make_polynomial_bounds(-0.25, -0.25, -0.25, -0.25, 1.0, 0.0);
    auto rep = check_vanishing_limits(bounds, {0.0, 1.0}, 1e5, 1e-2);
    CHECK(rep.pass);

    // same family, tolerance beyond the horizon: fails but flags the horizon
    auto tight = check_vanishing_limits(bounds, {0.0}, 1e5, 1e-8);
    CHECK_FALSE(tight.pass);
    CHECK(tight.per_s[0].forward_horizon_suspect);
}
