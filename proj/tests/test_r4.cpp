#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "tricenter/errors.hpp"
#include "tricenter/r4_example.hpp"

using namespace tricenter;

namespace {

// moderately nonuniform instance used across the structural checks
RhoParams structural_params() {
    return RhoParams{0.1, -1.0, 0.15, -1.05, 1.2, 0.05,
                     {[](double t) { return t + 0.05 * t * t * t; },
                      [](double t) { return 1.0 + 0.15 * t * t; }}};
}

std::vector<std::pair<double, double>> random_pairs(int n, double radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n; ++i) out.emplace_back(u(rng), u(rng));
    return out;
}

}  // namespace

TEST_CASE("structural axioms hold exactly for the closed form") {
    auto ex = make_r4_example(nabcd_from_rho(structural_params()), 5.0);
    CHECK(ex.condition_ok);  // a + c = 0.25 >= 0

    auto pairs = random_pairs(200, 5.0, 31);
    auto srep = check_splitting(ex.splitting, ex.T, pairs, 1e-10);
    CHECK(srep.pass);
    CHECK(srep.worst() <= 1e-10);

    std::vector<std::array<double, 3>> triples;
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) triples.push_back({u(rng), u(rng), u(rng)});
    auto crep = check_cocycle(ex.T, triples);
    CHECK(crep.max_residual <= 1e-10);

    auto brep = check_bounds(ex.T, ex.splitting, ex.bounds, pairs, 1e-10);
    CHECK(brep.pass);
}

TEST_CASE("closed form matches the integrated operator") {
    auto ex = make_r4_example(nabcd_from_rho(structural_params()), 5.0);
    auto Ti = EvolutionOperator::integrated(4, ex.generator);
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double t = u(rng), s = u(rng);
        const Eigen::MatrixXd a = ex.T(t, s), b = Ti(t, s);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() /
                                    std::max(1.0, a.cwiseAbs().maxCoeff()));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("uniform factors reduce the system to the pure growth-ratio flow") {
    NabcdParams p;
    p.ga = {[](double t) { return std::exp(-0.2 * t); },
            [](double t) { return -0.2 * std::exp(-0.2 * t); }};
    p.gc = {[](double t) { return std::exp(-0.1 * t); },
            [](double t) { return -0.1 * std::exp(-0.1 * t); }};
    p.gb = {[](double t) { return std::exp(1.0 * t); },
            [](double t) { return std::exp(1.0 * t); }};
    p.gd = {[](double t) { return std::exp(0.9 * t); },
            [](double t) { return 0.9 * std::exp(0.9 * t); }};
    p.ea = p.eb = p.ec = p.ed = ScalarFunction::constant(1.0);
    auto ex = make_r4_example(p, 5.0);

    // the oscillatory corrections vanish, so A(t) is the log-derivative diagonal
    const Eigen::MatrixXd a = ex.generator(0.7);
    CHECK(a(0, 0) == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(a(1, 1) == doctest::Approx(-0.1).epsilon(1e-8));
    CHECK(a(2, 2) == doctest::Approx(-0.9).epsilon(1e-8));
    CHECK(a(3, 3) == doctest::Approx(1.0).epsilon(1e-8));

    const Eigen::MatrixXd m = ex.T(2.0, 0.5);
    CHECK(m(0, 0) == doctest::Approx(std::exp(-0.2 * 0.5) / std::exp(-0.2 * 2.0)));
    CHECK(m(3, 3) == doctest::Approx(std::exp(2.0) / std::exp(0.5)));
}

TEST_CASE("hyperbolic blocks stay below their bounds for polynomial factors") {
    NabcdParams p;
    p.ga = p.gc = ScalarFunction::constant(1.0);
    p.gb = p.gd = {[](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }};
    p.ea = p.ec = ScalarFunction::constant(1.0);
    p.eb = p.ed = {[](double t) { return 1.0 + t * t; }, [](double t) { return 2.0 * t; }};
    auto ex = make_r4_example(p, 5.0);

    auto rep = check_bounds(ex.T, ex.splitting, ex.bounds, random_pairs(300, 5.0, 34), 1e-10);
    CHECK(rep.pass);
    CHECK(rep.margin_beta_plus <= 0.0);
    CHECK(rep.margin_beta_minus <= 0.0);
}

TEST_CASE("invalid growth or nonuniformity functions are rejected") {
    NabcdParams p;
    p.ga = ScalarFunction::constant(-1.0);  // must be positive
    p.gb = p.gc = p.gd = ScalarFunction::constant(1.0);
    p.ea = p.eb = p.ec = p.ed = ScalarFunction::constant(1.0);
    CHECK_THROWS_AS(make_r4_example(p, 5.0), InvalidParams);

    p.ga = ScalarFunction::constant(1.0);
    p.ea = ScalarFunction::constant(0.5);  // must be >= 1
    CHECK_THROWS_AS(make_r4_example(p, 5.0), InvalidParams);
}

TEST_CASE("violated growth-compatibility is reported but not fatal") {
    RhoParams rp{-0.3, -1.0, -0.2, -1.0, 1.0, 0.0,
                 {[](double t) { return t; }, [](double) { return 1.0; }}};
    auto ex = make_r4_example(nabcd_from_rho(rp), 5.0);
    CHECK_FALSE(ex.condition_ok);  // a + c < 0

    // the hyperbolic bounds still hold even though the center bound may not
    auto rep = check_bounds(ex.T, ex.splitting, ex.bounds, {{2.0, -1.0}}, 1e-10);
    CHECK(rep.margin_beta_plus <= 0.0);
}
