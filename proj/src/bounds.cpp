#include "tricenter/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tricenter/errors.hpp"

namespace tricenter {

std::string family_tag_name(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Generic: return "generic";
        case FamilyTag::Nabcd: return "nabcd";
        case FamilyTag::RhoExponential: return "rho-exponential";
        case FamilyTag::Exponential: return "exponential";
        case FamilyTag::MuPolynomial: return "mu-polynomial";
        case FamilyTag::Polynomial: return "polynomial";
    }
    return "generic";
}

namespace {

double checked(double v, const char* which, double t, double s) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidParams(std::string(which) + " bound is not positive and finite at (t,s) = (" +
                            std::to_string(t) + ", " + std::to_string(s) + ")");
    return v;
}

}  // namespace

double BoundFamily::alpha_at(double t, double s) const { return checked(alpha(t, s), "alpha", t, s); }

double BoundFamily::beta_plus_at(double t, double s) const {
    if (t < s) throw InvalidParams("beta_plus queried outside its domain t >= s");
    return checked(beta_plus(t, s), "beta_plus", t, s);
}

double BoundFamily::beta_minus_at(double t, double s) const {
    if (t > s) throw InvalidParams("beta_minus queried outside its domain t <= s");
    return checked(beta_minus(t, s), "beta_minus", t, s);
}

BoundReport check_bounds(const EvolutionOperator& T, const InvariantSplitting& splitting,
                         const BoundFamily& bounds,
                         const std::vector<std::pair<double, double>>& samples, double tolerance,
                         const NormSpec& norm) {
    if (samples.empty()) throw InvalidParams("check_bounds requires at least one sample");
    if (splitting.dim != T.dim())
        throw DimensionError("splitting and evolution operator dimensions differ");

    BoundReport rep;
    rep.tolerance = tolerance;
    rep.margin_alpha = rep.margin_beta_plus = rep.margin_beta_minus =
        -std::numeric_limits<double>::infinity();
    rep.rel_margin = -std::numeric_limits<double>::infinity();

    for (const auto& [t, s] : samples) {
        const Eigen::MatrixXd tts = T(t, s);
        {
            const double a = bounds.alpha_at(t, s);
            const double m = operator_norm(tts * splitting.P(s), norm) - a;
            rep.margin_alpha = std::max(rep.margin_alpha, m);
            rep.rel_margin = std::max(rep.rel_margin, m / a);
        }
        if (t >= s) {
            const double b = bounds.beta_plus_at(t, s);
            const double m = operator_norm(tts * splitting.Qp(s), norm) - b;
            rep.margin_beta_plus = std::max(rep.margin_beta_plus, m);
            rep.rel_margin = std::max(rep.rel_margin, m / b);
        }
        if (t <= s) {
            const double b = bounds.beta_minus_at(t, s);
            const double m = operator_norm(tts * splitting.Qm(s), norm) - b;
            rep.margin_beta_minus = std::max(rep.margin_beta_minus, m);
            rep.rel_margin = std::max(rep.rel_margin, m / b);
        }
    }
    rep.pass = rep.rel_margin <= tolerance;
    return rep;
}

LimitsReport check_vanishing_limits(const BoundFamily& bounds, const std::vector<double>& s_samples,
                                    double r_horizon, double tol) {
    if (!(r_horizon > 0.0)) throw InvalidParams("limit check requires a positive horizon");
    LimitsReport rep;
    rep.tolerance = tol;
    rep.pass = true;

    // geometric offsets 1, 2, 4, ... up to the horizon
    std::vector<double> offsets;
    for (double d = 1.0; d < r_horizon; d *= 2.0) offsets.push_back(d);
    offsets.push_back(r_horizon);

    for (double s : s_samples) {
        LimitTrend tr;
        tr.s = s;
        std::vector<double> fwd, bwd;
        for (double d : offsets) {
            fwd.push_back(bounds.beta_minus_at(s, s + d) * bounds.alpha_at(s + d, s));
            bwd.push_back(bounds.beta_plus_at(s, s - d) * bounds.alpha_at(s - d, s));
        }
        auto judge = [&](const std::vector<double>& seq, bool& ok, bool& horizon_suspect,
                         double& last) {
            last = seq.back();
            const size_t n = seq.size();
            const bool tail_decreasing = n >= 3 && seq[n - 1] < seq[n - 2] && seq[n - 2] < seq[n - 3];
            ok = last <= tol && tail_decreasing;
            horizon_suspect = !ok && tail_decreasing;
        };
        judge(fwd, tr.forward_ok, tr.forward_horizon_suspect, tr.last_forward);
        judge(bwd, tr.backward_ok, tr.backward_horizon_suspect, tr.last_backward);
        rep.pass = rep.pass && tr.pass();
        rep.per_s.push_back(tr);
    }
    return rep;
}

}  // namespace tricenter
