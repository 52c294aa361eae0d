#include "tricenter/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tricenter/errors.hpp"
#include "tricenter/quadrature.hpp"

namespace tricenter {

double ScalarFunction::deriv(double t) const {
    if (derivative) return derivative(t);
    const double h = 1e-6 * (1.0 + std::abs(t));
    return (value(t + h) - value(t - h)) / (2.0 * h);
}

double ScalarFunction::deriv_one_sided(double t, int side) const {
    // second-order one-sided difference; used at kink points where a supplied
    // closed-form derivative is not trustworthy
    const double h = (side >= 0 ? 1.0 : -1.0) * 1e-6 * (1.0 + std::abs(t));
    return (-3.0 * value(t) + 4.0 * value(t + h) - value(t + 2.0 * h)) / (2.0 * h);
}

ScalarFunction ScalarFunction::constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
}

double LipBudget::at(double r) const {
    const double v = budget(r);
    if (v < 0.0 && v > -1e-14) return 0.0;
    if (v < 0.0) throw InvalidParams("Lipschitz budget evaluated negative at r = " + std::to_string(r));
    return v;
}

LipBudget LipBudget::zero() {
    LipBudget b;
    b.budget = [](double) { return 0.0; };
    b.delta = 0.0;
    b.params = {{"kind", "zero"}};
    return b;
}

std::vector<double> condition_axis(double horizon) {
    std::vector<double> axis;
    axis.reserve(201);
    axis.push_back(0.0);
    for (int i = 0; i < 100; ++i) {
        const double v = horizon * std::pow(10.0, -3.0 + 3.0 * i / 99.0);
        axis.push_back(v);
        axis.push_back(-v);
    }
    std::sort(axis.begin(), axis.end());
    return axis;
}

std::vector<std::pair<double, double>> condition_grid_ge(double horizon) {
    const auto axis = condition_axis(horizon);
    std::vector<std::pair<double, double>> grid;
    grid.reserve(axis.size() * (axis.size() + 1) / 2);
    for (size_t j = 0; j < axis.size(); ++j)
        for (size_t i = 0; i <= j; ++i) grid.emplace_back(axis[j], axis[i]);
    return grid;
}

namespace {

double cos_exponent(double t) { return 0.5 * (std::cos(t) - 1.0); }

void validate_nabcd(const NabcdParams& p, double horizon) {
    const auto axis = condition_axis(horizon);
    const ScalarFunction* gs[] = {&p.ga, &p.gb, &p.gc, &p.gd};
    const ScalarFunction* es[] = {&p.ea, &p.eb, &p.ec, &p.ed};
    const char* gn[] = {"g_a", "g_b", "g_c", "g_d"};
    const char* en[] = {"eps_a", "eps_b", "eps_c", "eps_d"};
    for (double t : axis) {
        for (int i = 0; i < 4; ++i) {
            const double g = (*gs[i])(t);
            if (!(g > 0.0) || !std::isfinite(g))
                throw InvalidParams(std::string(gn[i]) + " must be positive; value " +
                                    std::to_string(g) + " at t = " + std::to_string(t));
            const double e = (*es[i])(t);
            if (!(e >= 1.0 - 1e-12) || !std::isfinite(e))
                throw InvalidParams(std::string(en[i]) + " must be >= 1; value " +
                                    std::to_string(e) + " at t = " + std::to_string(t));
        }
    }
}

void validate_rho(const RhoParams& p) {
    if (p.D < 1.0) throw InvalidParams("D must be >= 1");
    if (p.eps < 0.0) throw InvalidParams("eps must be >= 0");
    for (double t : condition_axis(10.0)) {
        if (t <= 0.0) continue;
        const double fwd = p.rho(t), bwd = p.rho(-t);
        if (std::abs(fwd + bwd) > 1e-9 * (1.0 + std::abs(fwd)))
            throw InvalidParams("rho must be odd; violated at t = " + std::to_string(t));
        if (!(p.rho.deriv(t) > 0.0) || !(p.rho.deriv(-t) > 0.0))
            throw InvalidParams("rho must be increasing; violated near t = " + std::to_string(t));
    }
}

void validate_mu(const MuParams& p) {
    if (p.D < 1.0) throw InvalidParams("D must be >= 1");
    if (p.eps < 0.0) throw InvalidParams("eps must be >= 0");
    for (double t : condition_axis(10.0))
        if (!(p.mu.deriv(t) > 0.0))
            throw InvalidParams("mu must have positive derivative; violated at t = " +
                                std::to_string(t));
}

// logarithmic-derivative combinations entering the nonuniform budgets:
//   (g_c g_d / eps_c)'  =  (g_c g_d / eps_c) (g_c'/g_c + g_d'/g_d - eps_c'/eps_c)
//   (-1/(g_a g_b eps_a))' = 1/(g_a g_b eps_a) (g_a'/g_a + g_b'/g_b + eps_a'/eps_a)
struct NabcdTerms {
    const NabcdParams& p;

    double stable_logsum(double r, int side) const {
        const double dgc = side == 0 ? p.gc.deriv(r) : p.gc.deriv_one_sided(r, side);
        const double dgd = side == 0 ? p.gd.deriv(r) : p.gd.deriv_one_sided(r, side);
        const double dec = side == 0 ? p.ec.deriv(r) : p.ec.deriv_one_sided(r, side);
        return dgc / p.gc(r) + dgd / p.gd(r) - dec / p.ec(r);
    }
    double unstable_logsum(double r, int side) const {
        const double dga = side == 0 ? p.ga.deriv(r) : p.ga.deriv_one_sided(r, side);
        const double dgb = side == 0 ? p.gb.deriv(r) : p.gb.deriv_one_sided(r, side);
        const double dea = side == 0 ? p.ea.deriv(r) : p.ea.deriv_one_sided(r, side);
        return dga / p.ga(r) + dgb / p.gb(r) + dea / p.ea(r);
    }

    // term multiplying delta in the budget, stable side: (1/(eps_c eps_d)) * logsum
    double term_stable(double r, int side) const {
        return stable_logsum(r, side) / (p.ec(r) * p.ed(r));
    }
    // unstable side: (1/(eps_a eps_b)) * logsum
    double term_unstable(double r, int side) const {
        return unstable_logsum(r, side) / (p.ea(r) * p.eb(r));
    }
    // derivative of g_c g_d / eps_c itself (for the canonical gamma)
    double stable_derivative(double r, int side) const {
        return p.gc(r) * p.gd(r) / p.ec(r) * stable_logsum(r, side);
    }
    // derivative of -1/(g_a g_b eps_a) itself
    double unstable_derivative(double r, int side) const {
        return unstable_logsum(r, side) / (p.ga(r) * p.gb(r) * p.ea(r));
    }
};

}  // namespace

ConditionReport check_nabcd_condition(const NabcdParams& p,
                                      const std::vector<std::pair<double, double>>& samples,
                                      double tolerance) {
    ConditionReport rep;
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    for (const auto& [t, s] : samples) {
        if (t < s) continue;
        const double lhs = (p.ga(s) * p.gc(s)) / (p.ga(t) * p.gc(t)) *
                           std::pow(p.ea(t) / p.ec(t), cos_exponent(t)) *
                           std::pow(p.ec(s) / p.ea(s), cos_exponent(s));
        if (lhs < rep.worst_ratio) {
            rep.worst_ratio = lhs;
            rep.arg_t = t;
            rep.arg_s = s;
        }
    }
    rep.pass = rep.worst_ratio >= 1.0 - tolerance;
    return rep;
}

BoundFamily make_nabcd_bounds(const NabcdParams& p, double check_horizon, bool* condition_ok) {
    validate_nabcd(p, check_horizon);
    const auto cond = check_nabcd_condition(p, condition_grid_ge(check_horizon));
    if (condition_ok) *condition_ok = cond.pass;

    BoundFamily fam;
    fam.tag = FamilyTag::Nabcd;
    fam.params = {{"family", "nabcd"}, {"condition_ok", cond.pass},
                  {"condition_worst_ratio", cond.worst_ratio}};
    fam.alpha = [p](double t, double s) {
        if (t > s) return p.ga(s) / p.ga(t) * p.ea(s);
        if (t < s) return p.gc(t) / p.gc(s) * p.ec(s);
        return std::min(p.ea(s), p.ec(s));
    };
    fam.beta_plus = [p](double t, double s) { return p.gd(s) / p.gd(t) * p.ed(s); };
    fam.beta_minus = [p](double t, double s) { return p.gb(t) / p.gb(s) * p.eb(s); };
    return fam;
}

BoundFamily make_rho_bounds(const RhoParams& p) {
    validate_rho(p);
    BoundFamily fam;
    fam.tag = FamilyTag::RhoExponential;
    fam.params = {{"family", "rho-exponential"}, {"a", p.a}, {"b", p.b}, {"c", p.c},
                  {"d", p.d},                    {"D", p.D}, {"eps", p.eps}};
    const auto rho = p.rho;
    fam.alpha = [p, rho](double t, double s) {
        const double rt = rho(t), rs = rho(s);
        const double rate = (t >= s) ? p.a * (rt - rs) : p.c * (rs - rt);
        return p.D * std::exp(rate + p.eps * std::abs(rs));
    };
    fam.beta_plus = [p, rho](double t, double s) {
        return p.D * std::exp(p.d * (rho(t) - rho(s)) + p.eps * std::abs(rho(s)));
    };
    fam.beta_minus = [p, rho](double t, double s) {
        return p.D * std::exp(p.b * (rho(s) - rho(t)) + p.eps * std::abs(rho(s)));
    };
    return fam;
}

BoundFamily make_exponential_bounds(double a, double b, double c, double d, double D, double eps) {
    RhoParams p{a, b, c, d, D, eps,
                {[](double t) { return t; }, [](double) { return 1.0; }}};
    BoundFamily fam = make_rho_bounds(p);
    fam.tag = FamilyTag::Exponential;
    fam.params["family"] = "exponential";
    return fam;
}

BoundFamily make_mu_polynomial_bounds(const MuParams& p) {
    validate_mu(p);
    BoundFamily fam;
    fam.tag = FamilyTag::MuPolynomial;
    fam.params = {{"family", "mu-polynomial"}, {"a", p.a}, {"b", p.b}, {"c", p.c},
                  {"d", p.d},                  {"D", p.D}, {"eps", p.eps}};
    const auto mu = p.mu;
    fam.alpha = [p, mu](double t, double s) {
        const double mt = mu(t), ms = mu(s);
        const double body = (t >= s) ? std::pow(mt - ms + 1.0, p.a) : std::pow(ms - mt + 1.0, p.c);
        return p.D * body * std::pow(std::abs(ms) + 1.0, p.eps);
    };
    fam.beta_plus = [p, mu](double t, double s) {
        return p.D * std::pow(mu(t) - mu(s) + 1.0, p.d) *
               std::pow(std::abs(mu(s)) + 1.0, p.eps);
    };
    fam.beta_minus = [p, mu](double t, double s) {
        return p.D * std::pow(mu(s) - mu(t) + 1.0, p.b) *
               std::pow(std::abs(mu(s)) + 1.0, p.eps);
    };
    return fam;
}

BoundFamily make_polynomial_bounds(double a, double b, double c, double d, double D, double eps) {
    MuParams p{a, b, c, d, D, eps,
               {[](double t) { return t; }, [](double) { return 1.0; }}};
    BoundFamily fam = make_mu_polynomial_bounds(p);
    fam.tag = FamilyTag::Polynomial;
    fam.params["family"] = "polynomial";
    return fam;
}

LipBudget lip_budget_nabcd(const NabcdParams& p, double delta,
                           std::function<double(double)> gamma, double check_horizon) {
    if (!(delta < 1.0 / 6.0) || !(delta > 0.0))
        throw InvalidParams("budget requires 0 < delta < 1/6; got " + std::to_string(delta));
    validate_nabcd(p, check_horizon);
    NabcdTerms terms{p};
    for (double r : condition_axis(check_horizon)) {
        const int side = (r == 0.0) ? 1 : 0;
        if (!(terms.stable_logsum(r, side) > 0.0) ||
            (r == 0.0 && !(terms.stable_logsum(r, -1) > 0.0)))
            throw BudgetUndefined(
                "stable-branch growth positivity (g_c g_d / eps_c)' > 0 fails at r = " +
                std::to_string(r));
        if (!(terms.unstable_logsum(r, side) > 0.0) ||
            (r == 0.0 && !(terms.unstable_logsum(r, -1) > 0.0)))
            throw BudgetUndefined(
                "unstable-branch growth positivity (-1/(g_a g_b eps_a))' > 0 fails at r = " +
                std::to_string(r));
    }

    LipBudget b;
    b.delta = delta;
    b.tag = FamilyTag::Nabcd;
    b.params = {{"kind", "nabcd"}, {"delta", delta}};
    b.budget = [p, delta, gamma](double r) {
        NabcdTerms terms{p};
        auto value = [&](int side) {
            return std::min({terms.term_stable(r, side), terms.term_unstable(r, side), gamma(r)});
        };
        // the admissibility inequality is only required away from 0; at the kink
        // take the conservative (smaller) of the one-sided evaluations
        const double v = (r == 0.0) ? std::min(value(+1), value(-1)) : value(0);
        return delta * v;
    };
    return b;
}

LipBudget lip_budget_nabcd_default_gamma(const NabcdParams& p, double delta, double anchor_s,
                                         double check_horizon) {
    const double s = anchor_s;
    const double stable_coeff = p.ec(s) / (2.0 * p.gc(s) * p.gd(s));
    const double unstable_coeff = p.ga(s) * p.gb(s) * p.ea(s) / 2.0;
    auto gamma = [p, stable_coeff, unstable_coeff](double t) {
        NabcdTerms terms{p};
        auto value = [&](int side) {
            return std::min(stable_coeff * terms.stable_derivative(t, side),
                            unstable_coeff * terms.unstable_derivative(t, side)) /
                   std::max(p.ea(t), p.ec(t));
        };
        return (t == 0.0) ? std::min(value(+1), value(-1)) : value(0);
    };
    LipBudget b = lip_budget_nabcd(p, delta, gamma, check_horizon);
    b.params["gamma"] = "canonical";
    b.params["anchor_s"] = anchor_s;
    return b;
}

std::function<double(double)> rho_gamma_function(const RhoParams& p, double gamma) {
    const auto rho = p.rho;
    const double D = p.D, eps = p.eps;
    return [rho, gamma, D, eps](double r) {
        return gamma / (2.0 * D) * rho.deriv(r) *
               std::exp(-(eps + gamma) * std::abs(rho(r)));
    };
}

LipBudget lip_budget_rho(const RhoParams& p, double delta, double gamma) {
    if (!(delta < 1.0 / 6.0) || !(delta > 0.0))
        throw InvalidParams("budget requires 0 < delta < 1/6; got " + std::to_string(delta));
    return lip_budget_rho_formula(p, delta, gamma);
}

LipBudget lip_budget_rho_formula(const RhoParams& p, double delta, double gamma) {
    if (!(delta > 0.0)) throw InvalidParams("delta must be positive");
    validate_rho(p);
    if (!(p.a + p.b + p.eps < 0.0) || !(p.c + p.d + p.eps < 0.0))
        throw InvalidParams("rho budget requires a+b+eps < 0 and c+d+eps < 0");
    if (p.eps > 0.0) {
        if (std::abs(gamma - p.eps) > 1e-12)
            throw InvalidParams("for eps > 0 the rate gamma must equal eps");
    } else {
        const double cap = 2.0 / p.D * std::min(-p.c - p.d, -p.a - p.b);
        if (!(gamma > 0.0 && gamma < cap))
            throw InvalidParams("gamma must satisfy 0 < gamma < " + std::to_string(cap) +
                                "; got " + std::to_string(gamma));
    }

    LipBudget b;
    b.delta = delta;
    b.tag = FamilyTag::RhoExponential;
    b.params = {{"kind", "rho"}, {"delta", delta}, {"gamma", gamma}, {"a", p.a}, {"b", p.b},
                {"c", p.c},      {"d", p.d},       {"D", p.D},       {"eps", p.eps}};
    b.budget = [p, delta, gamma](double r) {
        const double sgn = (r > 0.0) - (r < 0.0);
        const double absrho = std::abs(p.rho(r));
        const double m1 = -p.c - p.d - p.eps * sgn;
        const double m2 = -p.a - p.b + p.eps * sgn;
        const double m3 = p.D * gamma / 2.0 * std::exp((p.eps - gamma) * absrho);
        return delta * p.rho.deriv(r) / (p.D * p.D * std::exp(2.0 * p.eps * absrho)) *
               std::min({m1, m2, m3});
    };
    return b;
}

LipBudget lip_budget_mu(const MuParams& p, double delta, double gamma) {
    validate_mu(p);
    if (!(delta > 0.0)) throw InvalidParams("delta must be positive");
    if (!(gamma > 0.0)) throw InvalidParams("gamma must be positive");
    if (!(p.a <= 0.0 && p.c <= 0.0))
        throw InvalidParams("mu budget requires a <= 0 and c <= 0");
    if (!(2.0 * p.eps <= gamma)) throw InvalidParams("mu budget requires 2 eps <= gamma");
    if (!(p.eps - gamma + 1.0 < 0.0))
        throw InvalidParams("mu budget requires eps - gamma + 1 < 0");
    if (!(p.a + p.b + p.eps < 0.0) || !(p.c + p.d + p.eps < 0.0))
        throw InvalidParams("mu budget requires a+b+eps < 0 and c+d+eps < 0");

    LipBudget b;
    b.delta = delta;
    b.tag = FamilyTag::MuPolynomial;
    b.params = {{"kind", "mu"},  {"delta", delta}, {"gamma", gamma},
                {"a", p.a},      {"b", p.b},       {"c", p.c},
                {"d", p.d},      {"D", p.D},       {"eps", p.eps},
                {"delta_threshold", mu_delta_threshold(p, gamma)}};
    b.budget = [p, delta, gamma](double r) {
        return delta * p.mu.deriv(r) * std::pow(std::abs(p.mu(r)) + 1.0, -gamma);
    };
    return b;
}

double mu_delta_threshold(const MuParams& p, double gamma) {
    const double sigma_coeff = 2.0 * p.D / std::abs(p.eps - gamma + 1.0);
    const double hi = std::max(p.a + p.b, p.c + p.d);
    const double lo = std::min(p.a + p.b, p.c + p.d);
    const double omega_coeff =
        p.D * p.D * ((std::pow(2.0, p.eps + 1.0) + 1.0) / std::abs(hi + 2.0 * p.eps - gamma + 1.0) +
                     1.0 / std::abs(lo + 2.0 * p.eps - gamma + 1.0));
    return 1.0 / (2.0 * (sigma_coeff + omega_coeff));
}

double lemma4_bound(double lambda, double nu, double eps, double p) {
    if (!(lambda < 0.0)) throw Error("lemma4 bound requires lambda < 0");
    if (!(nu < 0.0)) throw Error("lemma4 bound requires nu < 0");
    if (!(eps >= 0.0)) throw Error("lemma4 bound requires eps >= 0");
    if (!(lambda + eps + nu + 1.0 < 0.0))
        throw Error("lemma4 bound requires lambda + eps + nu + 1 < 0");
    if (!(lambda + eps <= 0.0)) throw Error("lemma4 bound requires lambda + eps <= 0");
    if (!(nu + eps <= 0.0)) throw Error("lemma4 bound requires nu + eps <= 0");
    const double denom = std::abs(lambda + eps + nu + 1.0);
    return (p >= 0.0) ? 1.0 / denom : (std::pow(2.0, eps + 1.0) + 1.0) / denom;
}

double lemma4_integral(double lambda, double nu, double eps, double p, double quad_tol) {
    if (!(lambda < 0.0) || !(nu < 0.0) || !(eps >= 0.0))
        throw Error("lemma4 integral requires lambda, nu < 0 and eps >= 0");
    const double decay = lambda + nu + 1.0;  // exponential rate after tau = e^u - 1
    if (!(decay < 0.0) || !(lambda + eps + nu + 1.0 < 0.0))
        throw Error("lemma4 integrand is not integrable for these exponents");

    const double weight = std::pow(std::abs(p) + 1.0, eps);
    auto integrand = [=](double u) {
        const double tau = std::expm1(u);
        return std::exp(u * (lambda + 1.0)) * std::pow(std::abs(tau + p) + 1.0, nu) * weight;
    };

    // truncate where the exponential tail majorant drops below the tolerance
    const double tail_coeff = std::pow(2.0, -nu) * weight;
    double cutoff =
        std::log(std::max(2.0 * tail_coeff / (quad_tol * std::abs(decay)), 2.0)) / std::abs(decay);
    cutoff = std::max(cutoff, std::log(1.0 + 2.0 * std::abs(p)) + 1.0);

    QuadOptions opts;
    opts.tol = 0.5 * quad_tol;
    if (p < 0.0) opts.breakpoints.push_back(std::log1p(std::abs(p)));
    const QuadResult res = integrate(integrand, 0.0, cutoff, opts);
    if (!res.converged)
        throw QuadratureError("lemma4 integral quadrature did not converge at tolerance " +
                              std::to_string(quad_tol));
    return res.value;
}

}  // namespace tricenter
