#include <doctest.h>

#include <cmath>
#include <random>

#include "tricenter/errors.hpp"
#include "tricenter/operators.hpp"
#include "support.hpp"

using namespace tricenter;
using namespace testsupport;

TEST_CASE("truncation certificate holds on the reference grid and fails on a short one") {
    auto rp = make_reference(0.05, small_grid());
    auto cert = certify_truncation(rp.problem());
    CHECK(cert.ok);
    CHECK(cert.worst_tail < rp.grid.tail_tol);

    GridSpec tight = small_grid();
    tight.t = Axis{-1.5, 1.5, 9};
    tight.s = Axis{-1.5, 1.5, 5};
    tight.tail_tol = 1e-6;
    auto bad = rp;
    bad.grid = tight;
    CHECK_THROWS_AS(certify_truncation(bad.problem()), TruncationError);
}

TEST_CASE("zero perturbation: J fixes the unperturbed field and L vanishes") {
    auto rp = make_reference(0.0, small_grid());
    auto problem = rp.problem();
    CenterField x0 = initial_center_field(problem);
    GraphField phi0 = zero_graph_field(problem);
    CenterField x1 = apply_J(problem, x0, phi0);
    GraphField phi1 = apply_L(problem, x0, phi0);
    CHECK(metric_dprime(x1, x0, rp.system.bounds) == 0.0);
    CHECK(metric_d(phi1, phi0) == 0.0);
}

TEST_CASE("unperturbed trajectory field carries the center flow") {
    // with unit center rates the trajectory field is the embedded coordinate
    auto rp = make_reference(0.0, small_grid());
    CenterField x0 = initial_center_field(rp.problem());
    const GridSpec& g = rp.grid;
    double xi[3];
    for (int k = 0; k < g.xi_nodes(); ++k) {
        x0.xi_of(k, xi);
        const double* v = x0.node(3, 2, k);
        CHECK(v[0] == doctest::Approx(xi[0]));
        CHECK(v[1] == doctest::Approx(xi[1]));
        CHECK(v[2] == 0.0);
        CHECK(v[3] == 0.0);
    }
}

TEST_CASE("trajectory update agrees with a refined quadrature oracle") {
    auto rp = make_reference(0.05, small_grid());
    auto problem = rp.problem();
    CenterField x = initial_center_field(problem);
    GraphField phi = zero_graph_field(problem);
    // one full update pair so the fields are nontrivial
    CenterField x1 = apply_J(problem, x, phi);
    GraphField phi1 = apply_L(problem, x, phi);
    CenterField x2 = apply_J(problem, x1, phi1);

    const GridSpec& g = rp.grid;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> it_d(0, g.t.n - 1), is_d(0, g.s.n - 1),
        k_d(0, g.xi_nodes() - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int it = it_d(rng), is = is_d(rng), k = k_d(rng);
        const double t = g.t.node(it), s = g.s.node(is);
        double xi[3];
        x1.xi_of(k, xi);

        // oracle: same integrand, 4x the panels on a uniform subdivision
        Eigen::VectorXd val =
            rp.system.T(t, s) * (rp.system.splitting.P(s) * rp.system.embed_center(xi));
        const int panels = 4 * std::max(2, static_cast<int>(std::ceil(std::abs(t - s) / g.t.step())));
        const double h = (t - s) / panels;
        auto integrand = [&](double r) {
            Eigen::VectorXd vx(4);
            x1.eval_t(r, is, k, vx.data());
            double coords[3];
            rp.system.center_coords(vx, coords);
            Eigen::VectorXd vphi(4);
            phi1.eval(r, coords, vphi.data());
            return Eigen::VectorXd(rp.system.T(t, r) *
                                   (rp.system.splitting.P(r) * rp.f.f(r, vx + vphi)));
        };
        if (t != s) {
            Eigen::VectorXd acc = Eigen::VectorXd::Zero(4);
            for (int i = 0; i < panels; ++i) {
                const double a = s + i * h, b = a + h;
                acc += (b - a) / 6.0 * (integrand(a) + 4.0 * integrand(0.5 * (a + b)) + integrand(b));
            }
            val += acc;
        }
        Eigen::Map<const Eigen::VectorXd> lib(x2.node(it, is, k), 4);
        worst = std::max(worst, (lib - val).lpNorm<Eigen::Infinity>());
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("graph update is the sum of its unstable and stable parts") {
    auto rp = make_reference(0.05, small_grid());
    auto problem = rp.problem();
    CenterField x = initial_center_field(problem);
    GraphField phi = zero_graph_field(problem);
    GraphField full = apply_L(problem, x, phi);
    GraphField plus = apply_Lplus(problem, x, phi);
    GraphField minus = apply_Lminus(problem, x, phi);
    const GridSpec& g = rp.grid;
    double worst = 0.0;
    for (int im = 0; im < g.t.n; ++im)
        for (int k = 0; k < g.xi_nodes(); ++k)
            for (int c = 0; c < 4; ++c)
                worst = std::max(worst, std::abs(full.node(im, k)[c] - plus.node(im, k)[c] -
                                                 minus.node(im, k)[c]));
    CHECK(worst <= 1e-15);

    // the unstable part lives in the w-slot, the stable one in the z-slot
    for (int im = 0; im < g.t.n; ++im)
        for (int k = 0; k < g.xi_nodes(); ++k) {
            CHECK(plus.node(im, k)[3] == 0.0);
            CHECK(minus.node(im, k)[2] == 0.0);
        }
}

TEST_CASE("graph update vanishes at the origin column and obeys the mass bound") {
    auto rp = make_reference(0.05, small_grid());
    auto problem = rp.problem();
    CenterField x = initial_center_field(problem);
    GraphField phi = zero_graph_field(problem);
    GraphField l1 = apply_L(problem, x, phi);

    const GridSpec& g = rp.grid;
    const double omega = 0.025;
    const double cap = rp.M * (1.0 + rp.N) * omega;
    double xi[3];
    for (int im = 0; im < g.t.n; ++im)
        for (int k = 0; k < g.xi_nodes(); ++k) {
            l1.xi_of(k, xi);
            const double nxi = std::max(std::abs(xi[0]), std::abs(xi[1]));
            Eigen::Map<const Eigen::VectorXd> v(l1.node(im, k), 4);
            if (nxi == 0.0) {
                CHECK(v.lpNorm<Eigen::Infinity>() == 0.0);
            } else {
                CHECK(v.lpNorm<Eigen::Infinity>() <= cap * nxi * (1.0 + 1e-9));
            }
        }
}
