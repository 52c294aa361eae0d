#include <doctest.h>

#include <cmath>

#include "tricenter/errors.hpp"
#include "tricenter/splitting.hpp"

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

EvolutionOperator diag4_flow() {
    return EvolutionOperator::closed_form(4, [](double t, double s) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        m(2, 2) = std::exp(-(t - s));
        m(3, 3) = std::exp(t - s);
        return m;
    });
}

std::vector<std::pair<double, double>> pair_grid() {
    std::vector<std::pair<double, double>> g;
    for (double t = -4.0; t <= 4.0; t += 1.0)
        for (double s = -4.0; s <= 4.0; s += 1.0) g.emplace_back(t, s);
    return g;
}

}  // namespace

TEST_CASE("coordinate projections commute exactly with a diagonal flow") {
    auto rep = check_splitting(coordinate_splitting(), diag4_flow(), pair_grid(), 1e-12);
    CHECK(rep.worst() == 0.0);
    CHECK(rep.pass);
}

TEST_CASE("a non-idempotent projection is caught") {
    auto sp = coordinate_splitting();
    sp.P = [](double) {
        Eigen::MatrixXd m = coord_proj({0, 1});
        m(0, 1) += 0.1;  // still P Q = 0, no longer P^2 = P? -- P^2 = P + 0.1 E12 + 0.1 E12
        return m;
    };
    auto rep = check_splitting(sp, diag4_flow(), pair_grid(), 1e-9);
    CHECK(rep.idempotency > 0.009);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("sum-to-identity violations are caught") {
    auto sp = coordinate_splitting();
    sp.Qm = [](double) { return 0.5 * coord_proj({3}); };
    auto rep = check_splitting(sp, diag4_flow(), pair_grid(), 1e-9);
    CHECK(rep.sum_identity == doctest::Approx(0.5));
    CHECK_FALSE(rep.pass);
}

TEST_CASE("dimension mismatch is a structural error") {
    InvariantSplitting sp;
    sp.dim = 3;
    sp.P = [](double) { return Eigen::MatrixXd::Identity(3, 3); };
    sp.Qp = [](double) { return Eigen::MatrixXd::Zero(3, 3); };
    sp.Qm = [](double) { return Eigen::MatrixXd::Zero(3, 3); };
    CHECK_THROWS_AS(check_splitting(sp, diag4_flow(), pair_grid()), DimensionError);
}
