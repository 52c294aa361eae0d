#include <doctest.h>

#include <cmath>
#include <random>

#include "tricenter/errors.hpp"
#include "tricenter/hypothesis.hpp"
#include "tricenter/quadrature.hpp"
#include "tricenter/r4_example.hpp"

using namespace tricenter;

namespace {

ScalarFunction identity_fn() { return {[](double t) { return t; }, [](double) { return 1.0; }}; }

RhoParams exp_setup() { return RhoParams{0.0, -1.0, 0.0, -1.0, 1.0, 0.0, identity_fn()}; }

LipBudget reference_budget(double delta = 0.05) {
    return lip_budget_rho_formula(exp_setup(), delta, 1.0);
}

BoundFamily reference_bounds() { return make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0); }

HypothesisOptions fast_options() {
    HypothesisOptions o;
    o.horizon = 12.0;
    o.sup_points = 41;
    return o;
}

// independent oracle: solve (M-1)/sigma = M(1+N) = N/omega by Newton iteration
// on F(M, N) = 0, far from the closed forms under test
std::pair<double, double> newton_MN(double sg, double om) {
    double M = 1.5, N = 0.5;
    for (int it = 0; it < 200; ++it) {
        const double f1 = (M - 1.0) - sg * M * (1.0 + N);
        const double f2 = N - om * M * (1.0 + N);
        const double j11 = 1.0 - sg * (1.0 + N), j12 = -sg * M;
        const double j21 = -om * (1.0 + N), j22 = 1.0 - om * M;
        const double det = j11 * j22 - j12 * j21;
        const double dM = (f1 * j22 - f2 * j12) / det;
        const double dN = (j11 * f2 - j21 * f1) / det;
        M -= dM;
        N -= dN;
        if (std::abs(dM) + std::abs(dN) < 1e-15) break;
    }
    return {M, N};
}

}  // namespace

TEST_CASE("contraction constants at frozen reference points") {
    {
        auto [M, N] = compute_MN(0.125, 0.125);
        CHECK(M == doctest::Approx(1.1715728752538099).epsilon(1e-12));
        CHECK(N == doctest::Approx(0.1715728752538099).epsilon(1e-12));
    }
    {
        auto [M, N] = compute_MN(0.2, 0.05);
        CHECK(M == doctest::Approx(1.2715838525995199).epsilon(1e-12));
        CHECK(N == doctest::Approx(0.067895963149879967).epsilon(1e-12));
        CHECK((M - 1.0) / 0.2 == doctest::Approx(1.3579192629975993).epsilon(1e-12));
        CHECK(N / 0.05 == doctest::Approx(1.3579192629975993).epsilon(1e-12));
    }
    {
        auto [M, N] = compute_MN(0.05, 0.025);
        CHECK(M == doctest::Approx(1.0541332543032828).epsilon(1e-12));
        CHECK(N == doctest::Approx(0.027066627151641406).epsilon(1e-12));
    }
}

TEST_CASE("closed forms agree with an independent Newton solve") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double sg = 0.002 + 0.45 * u01(rng);
        const double om = 0.002 + (0.495 - sg) * u01(rng);
        auto [M, N] = compute_MN(sg, om);
        auto [Mo, No] = newton_MN(sg, om);
        CHECK(M == doctest::Approx(Mo).epsilon(1e-11));
        CHECK(N == doctest::Approx(No).epsilon(1e-11));
        CHECK(M > 1.0);
        CHECK(M < 2.0);
        CHECK(N > 0.0);
        CHECK(N < 1.0);
        CHECK(contraction_factor(sg, om, M, N) < 1.0);
    }
}

TEST_CASE("joint limit and degenerate handling") {
    {
        auto [M, N] = compute_MN(1e-9, 1e-9);
        CHECK(M == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(N == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    }
    {
        auto [M, N] = compute_MN(0.0, 0.0);
        CHECK(M == 1.0);
        CHECK(N == 0.0);
    }
    {
        auto [M, N] = compute_MN(0.3, 0.0);
        CHECK(M == doctest::Approx(1.0 / 0.7).epsilon(1e-14));
        CHECK(N == 0.0);
    }
    {
        auto [M, N] = compute_MN(0.0, 0.3);
        CHECK(M == 1.0);
        CHECK(N == doctest::Approx(0.3 / 0.7).epsilon(1e-14));
    }
}

TEST_CASE("smallness violations are rejected") {
    CHECK_THROWS_AS(compute_MN(0.3, 0.2), HypothesisViolated);
    CHECK_THROWS_AS(compute_MN(0.5, 0.5), HypothesisViolated);
}

TEST_CASE("sigma vanishes for a zero budget") {
    auto [sigma, diag] = compute_sigma(reference_bounds(), LipBudget::zero(), fast_options());
    CHECK(sigma == 0.0);
    CHECK(diag.converged);
}

TEST_CASE("sigma of the reference setup equals delta") {
    // the transfer ratio alpha_{t,r} alpha_{r,s} / alpha_{t,s} is identically 1
    // here, so sigma is the total budget mass 2 * 0.025 = delta
    auto [sigma, diag] = compute_sigma(reference_bounds(), reference_budget(), fast_options());
    CHECK(sigma == doctest::Approx(0.05).epsilon(2e-5));
    CHECK(diag.converged);
    CHECK_FALSE(diag.diverging);
}

TEST_CASE("omega of the reference setup is delta / 2 at s = 0") {
    auto [omega, diag] = compute_omega(reference_bounds(), reference_budget(), fast_options());
    CHECK(omega == doctest::Approx(0.025).epsilon(2e-5));
    CHECK(std::abs(diag.arg_s) <= 0.05);
    CHECK(diag.converged);

    // closed form of the s-profile away from the peak: (delta/2) e^{-s} (1 + s)
    // is a strict upper envelope elsewhere, so the sup must not exceed it at 0
    CHECK(omega <= 0.025 * (1.0 + 1e-6));
}

TEST_CASE("sigma and omega are exactly linear in the budget") {
    auto opts = fast_options();
    opts.sup_points = 21;
    const LipFn lip = [](double r) { return 0.025 * std::exp(-std::abs(r)); };
    const LipFn lip_scaled = [](double r) { return 0.37 * 0.025 * std::exp(-std::abs(r)); };
    auto bounds = reference_bounds();
    auto [s1, d1] = compute_sigma(bounds, lip, opts);
    auto [s2, d2] = compute_sigma(bounds, lip_scaled, opts);
    CHECK(s2 == doctest::Approx(0.37 * s1).epsilon(1e-10));
    auto [w1, e1] = compute_omega(bounds, lip, opts);
    auto [w2, e2] = compute_omega(bounds, lip_scaled, opts);
    CHECK(w2 == doctest::Approx(0.37 * w1).epsilon(1e-10));
}

TEST_CASE("nonuniform-family budget keeps sigma below delta and omega below 2 delta") {
    RhoParams rp{0.1, -1.2, 0.1, -1.2, 1.2, 0.05, identity_fn()};
    const double delta = 0.05;
    auto bounds = make_rho_bounds(rp);
    auto budget = lip_budget_rho(rp, delta, rp.eps);
    HypothesisOptions opts;
    opts.horizon = 8.0;
    opts.sup_points = 31;
    auto [sigma, sd] = compute_sigma(bounds, budget, opts);
    auto [omega, od] = compute_omega(bounds, budget, opts);
    CHECK(sigma <= delta * (1.0 + 1e-9));
    CHECK(omega <= 2.0 * delta * (1.0 + 1e-9));

    // independent 1-d oracle: along the center the transfer ratio collapses to
    // the nonuniformity factor eps_a(r)
    QuadOptions qopts;
    qopts.breakpoints = {0.0};
    qopts.tol = 1e-12;
    auto one_d = integrate(
        [&](double r) {
            return 1.2 * std::exp(0.05 * std::abs(r)) * budget.at(r);
        },
        -2.0 * opts.horizon, 2.0 * opts.horizon, qopts);
    CHECK(sigma == doctest::Approx(one_d.value).epsilon(1e-6));
}

TEST_CASE("reference report passes with the expected constants") {
    auto report = assemble_report(reference_bounds(), reference_budget(), fast_options());
    CHECK(report.pass);
    CHECK(report.limits_ok);
    CHECK(report.smallness_ok);
    CHECK(report.sigma == doctest::Approx(0.05).epsilon(2e-5));
    CHECK(report.omega == doctest::Approx(0.025).epsilon(2e-5));
    CHECK(report.M == doctest::Approx(1.0541332543).epsilon(1e-4));
    CHECK(report.N == doctest::Approx(0.0270666272).epsilon(1e-3));
    CHECK(report.q <= 0.08);
    CHECK(report.q == doctest::Approx(0.0790599941).epsilon(1e-3));

    auto j = report.to_json();
    CHECK(j.at("sigma").get<double>() == report.sigma);
    CHECK(j.at("pass").get<bool>());
}

TEST_CASE("an inadmissible delta fails the certificate, not the construction") {
    auto report = assemble_report(reference_bounds(), reference_budget(0.5), fast_options());
    CHECK_FALSE(report.pass);
    CHECK_FALSE(report.smallness_ok);
    CHECK(report.sigma == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(report.omega == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(std::isinf(report.q));
    REQUIRE_FALSE(report.reasons.empty());
}

TEST_CASE("zero perturbation passes trivially with q = 0") {
    auto report = assemble_report(reference_bounds(), LipBudget::zero(), fast_options());
    CHECK(report.pass);
    CHECK(report.sigma == 0.0);
    CHECK(report.omega == 0.0);
    CHECK(report.M == 1.0);
    CHECK(report.N == 0.0);
    CHECK(report.q == 0.0);
}

TEST_CASE("a family without vanishing limits fails with a reason") {
    auto flat = make_exponential_bounds(0.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    auto report = assemble_report(flat, LipBudget::zero(), fast_options());
    CHECK_FALSE(report.pass);
    CHECK_FALSE(report.limits_ok);
    REQUIRE_FALSE(report.reasons.empty());
    CHECK(report.reasons[0].find("vanishing-limit") != std::string::npos);
}
