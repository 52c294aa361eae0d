#include <doctest.h>

#include <cmath>

#include "tricenter/errors.hpp"
#include "tricenter/fields.hpp"
#include "tricenter/families.hpp"
#include "support.hpp"

using namespace tricenter;

namespace {

GridSpec tiny_grid() {
    GridSpec g;
    g.t = Axis{-2.0, 2.0, 9};
    g.s = Axis{-2.0, 2.0, 5};
    g.xi = Axis{-1.0, 1.0, 5};
    g.dim_center = 2;
    return g;
}

// fill a trajectory field with a per-axis-linear function, which multilinear
// interpolation reproduces exactly
void fill_linear(CenterField& x) {
    const GridSpec& g = x.grid();
    double xi[3];
    for (int it = 0; it < g.t.n; ++it)
        for (int is = 0; is < g.s.n; ++is)
            for (int k = 0; k < g.xi_nodes(); ++k) {
                x.xi_of(k, xi);
                double* v = x.node(it, is, k);
                v[0] = g.t.node(it) + 2.0 * g.s.node(is) + 3.0 * xi[0] - xi[1];
                v[1] = xi[0];
                v[2] = 0.5 * xi[1];
                v[3] = -xi[0] + 0.25 * xi[1];
            }
}

}  // namespace

TEST_CASE("multilinear interpolation is exact on per-axis-linear data") {
    CenterField x(tiny_grid(), 4);
    fill_linear(x);
    double out[4];
    const double xi[2] = {0.37, -0.81};
    x.eval(0.93, -1.17, xi, out);
    CHECK(out[0] == doctest::Approx(0.93 - 2.34 + 3 * 0.37 + 0.81).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("t-slice interpolation matches the full evaluation at grid anchors") {
    CenterField x(tiny_grid(), 4);
    fill_linear(x);
    double a[4], b[4];
    x.eval_t(0.31, 2, 7, a);
    double xi[3];
    x.xi_of(7, xi);
    x.eval(0.31, x.grid().s.node(2), xi, b);
    for (int c = 0; c < 4; ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-14));
}

TEST_CASE("graph queries beyond the box scale positively homogeneously") {
    GraphField phi(tiny_grid(), 4);
    const GridSpec& g = phi.grid();
    double xi[3];
    for (int it = 0; it < g.t.n; ++it)
        for (int k = 0; k < g.xi_nodes(); ++k) {
            phi.xi_of(k, xi);
            phi.node(it, k)[2] = 0.2 * xi[0];
            phi.node(it, k)[3] = -0.1 * xi[1];
        }
    double out[4];
    const double inside[2] = {0.5, -1.0};
    phi.eval(0.0, inside, out);
    CHECK(out[2] == doctest::Approx(0.1));
    const double outside[2] = {1.0, -2.0};  // twice the boundary point (0.5, -1)
    phi.eval(0.0, outside, out);
    CHECK(out[2] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(out[3] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(phi.extrapolation_queries() == 1);
}

TEST_CASE("graph metric of a linear map against zero is its induced norm") {
    GraphField a(tiny_grid(), 4), b(tiny_grid(), 4);
    const GridSpec& g = a.grid();
    double xi[3];
    for (int it = 0; it < g.t.n; ++it)
        for (int k = 0; k < g.xi_nodes(); ++k) {
            a.xi_of(k, xi);
            a.node(it, k)[2] = 0.2 * xi[0];
            a.node(it, k)[3] = -0.3 * xi[1];
        }
    CHECK(metric_d(a, a) == 0.0);
    CHECK(metric_d(a, b) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("weighted trajectory metric respects the bound weight") {
    auto bounds = make_exponential_bounds(0.0, -1.0, 0.0, -1.0, 1.0, 0.0);
    CenterField x(tiny_grid(), 4), y(tiny_grid(), 4);
    fill_linear(x);
    CHECK(metric_dprime(x, x, bounds) == 0.0);
    const double d = metric_dprime(x, y, bounds);
    CHECK(d > 0.0);
    CHECK(metric_dsecond(x, GraphField(tiny_grid(), 4), y, GraphField(tiny_grid(), 4), bounds) ==
          doctest::Approx(d));
}

TEST_CASE("the unperturbed trajectory field saturates the weighted metric at one") {
    auto rp = testsupport::make_reference(0.0, testsupport::small_grid());
    auto problem = rp.problem();
    CenterField x0 = initial_center_field(problem);
    CenterField zero(problem.grid, 4);
    CHECK(metric_dprime(x0, zero, rp.system.bounds) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mismatched grids are rejected") {
    GridSpec other = tiny_grid();
    other.xi.n = 3;
    CHECK_THROWS_AS(metric_d(GraphField(tiny_grid(), 4), GraphField(other, 4)), DimensionError);
}

TEST_CASE("grid refinement doubles the density and keeps ranges") {
    GridSpec g = tiny_grid();
    GridSpec r = g.refined();
    CHECK(r.t.n == 2 * g.t.n - 1);
    CHECK(r.s.n == 2 * g.s.n - 1);
    CHECK(r.xi.n == 2 * g.xi.n - 1);
    CHECK(r.t.hi == g.t.hi);
    CHECK(r.t.step() == doctest::Approx(0.5 * g.t.step()));
}

TEST_CASE("grid validation catches inconsistent ranges") {
    GridSpec g = tiny_grid();
    g.s = Axis{-3.0, 3.0, 5};  // wider than the t-range
    CHECK_THROWS_AS(g.validate(), InvalidParams);
    GridSpec h = tiny_grid();
    h.trunc_radius = 5.0;
    CHECK_THROWS_AS(h.validate(), InvalidParams);
}
