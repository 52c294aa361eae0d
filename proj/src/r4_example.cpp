#include "tricenter/r4_example.hpp"

#include <cmath>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {

double cos_exponent(double t) { return 0.5 * (std::cos(t) - 1.0); }

// diagonal entry ratio g-part * eps-part shared by all four components:
//   sign=-1: g(s)/g(t),  sign=+1: g(t)/g(s),  times eps(t)^{ct}/eps(s)^{cs}
double diag_entry(const ScalarFunction& g, const ScalarFunction& e, double t, double s, int sign) {
    const double gratio = (sign < 0) ? g(s) / g(t) : g(t) / g(s);
    return gratio * std::pow(e(t), cos_exponent(t)) / std::pow(e(s), cos_exponent(s));
}

// oscillatory correction entering the diagonal coefficients; defined as 0 at
// t = 0 where the nonuniformity factor may only have one-sided derivatives
double eps_star(const ScalarFunction& e, double t) {
    if (t == 0.0) return 0.0;
    return e.deriv(t) / e(t) * cos_exponent(t) - std::log(e(t)) * 0.5 * std::sin(t);
}

}  // namespace

NabcdParams nabcd_from_rho(const RhoParams& p) {
    auto g_of = [rho = p.rho](double rate) {
        return ScalarFunction{
            [rho, rate](double t) { return std::exp(-rate * rho(t)); },
            [rho, rate](double t) { return -rate * rho.deriv(t) * std::exp(-rate * rho(t)); }};
    };
    auto eps_fn = [rho = p.rho, D = p.D, eps = p.eps]() {
        return ScalarFunction{
            [rho, D, eps](double t) { return D * std::exp(eps * std::abs(rho(t))); },
            [rho, D, eps](double t) {
                const double sgn = (t > 0.0) - (t < 0.0);
                return D * eps * sgn * rho.deriv(t) * std::exp(eps * std::abs(rho(t)));
            }};
    };
    NabcdParams n;
    n.ga = g_of(p.a);
    n.gb = g_of(p.b);
    n.gc = g_of(p.c);
    n.gd = g_of(p.d);
    n.ea = eps_fn();
    n.eb = eps_fn();
    n.ec = eps_fn();
    n.ed = eps_fn();
    return n;
}

R4Example make_r4_example(const NabcdParams& p, double check_horizon) {
    R4Example ex;
    ex.params = p;
    ex.bounds = make_nabcd_bounds(p, check_horizon, &ex.condition_ok);

    ex.T = EvolutionOperator::closed_form(4, [p](double t, double s) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
        m(0, 0) = diag_entry(p.ga, p.ea, t, s, -1);
        m(1, 1) = diag_entry(p.gc, p.ec, t, s, +1);
        m(2, 2) = diag_entry(p.gd, p.ed, t, s, -1);
        m(3, 3) = diag_entry(p.gb, p.eb, t, s, +1);
        return m;
    });

    ex.generator = [p](double t) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
        a(0, 0) = -p.ga.deriv(t) / p.ga(t) + eps_star(p.ea, t);
        a(1, 1) = p.gc.deriv(t) / p.gc(t) + eps_star(p.ec, t);
        a(2, 2) = -p.gd.deriv(t) / p.gd(t) + eps_star(p.ed, t);
        a(3, 3) = p.gb.deriv(t) / p.gb(t) + eps_star(p.eb, t);
        return a;
    };

    auto projector = [](std::initializer_list<int> comps) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
        for (int c : comps) m(c, c) = 1.0;
        return m;
    };
    ex.splitting.dim = 4;
    ex.splitting.P = [projector](double) { return projector({0, 1}); };
    ex.splitting.Qp = [projector](double) { return projector({2}); };
    ex.splitting.Qm = [projector](double) { return projector({3}); };
    return ex;
}

TrichotomySystem R4Example::system(const NormSpec& norm) const {
    TrichotomySystem sys;
    sys.dim = 4;
    sys.dim_center = 2;
    sys.T = T;
    sys.splitting = splitting;
    sys.bounds = bounds;
    sys.generator = generator;
    sys.norm = norm;
    sys.center_basis = Eigen::MatrixXd::Zero(4, 2);
    sys.center_basis(0, 0) = 1.0;
    sys.center_basis(1, 1) = 1.0;
    sys.finalize();
    return sys;
}

}  // namespace tricenter
