#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tricenter/evolution.hpp"
#include "tricenter/norms.hpp"
#include "tricenter/splitting.hpp"

namespace tricenter {

using TwoTimeFn = std::function<double(double, double)>;

enum class FamilyTag { Generic, Nabcd, RhoExponential, Exponential, MuPolynomial, Polynomial };

std::string family_tag_name(FamilyTag tag);

/// Trichotomy bound functions. alpha is defined on all of R^2, beta_plus on
/// {t >= s} and beta_minus on {t <= s}; all three are strictly positive there.
struct BoundFamily {
    TwoTimeFn alpha;
    TwoTimeFn beta_plus;
    TwoTimeFn beta_minus;
    FamilyTag tag = FamilyTag::Generic;
    nlohmann::json params;  // family parameters, echoed into reports

    double alpha_at(double t, double s) const;
    double beta_plus_at(double t, double s) const;   // requires t >= s
    double beta_minus_at(double t, double s) const;  // requires t <= s
};

/// Worst margins ||T proj|| - bound per trichotomy condition. `pass` uses the
/// margin relative to the bound value so large operator magnitudes stay
/// comparable.
struct BoundReport {
    double margin_alpha = 0.0;       // over all sampled (t, s)
    double margin_beta_plus = 0.0;   // over sampled t >= s
    double margin_beta_minus = 0.0;  // over sampled t <= s
    double rel_margin = 0.0;         // worst margin / bound
    double tolerance = 0.0;
    bool pass = false;
};

BoundReport check_bounds(const EvolutionOperator& T, const InvariantSplitting& splitting,
                         const BoundFamily& bounds,
                         const std::vector<std::pair<double, double>>& samples,
                         double tolerance = 1e-9, const NormSpec& norm = NormSpec::max_norm());

/// Decay of the products beta-_{s,r} alpha_{r,s} (r -> +inf) and
/// beta+_{s,r} alpha_{r,s} (r -> -inf) along a geometric schedule.
struct LimitTrend {
    double s = 0.0;
    double last_forward = 0.0;    // beta- alpha at the largest r
    double last_backward = 0.0;   // beta+ alpha at the most negative r
    bool forward_ok = false;
    bool backward_ok = false;
    /// set when the product is still above tol but trending down: the horizon,
    /// not the family, is the likely culprit
    bool forward_horizon_suspect = false;
    bool backward_horizon_suspect = false;

    bool pass() const { return forward_ok && backward_ok; }
};

struct LimitsReport {
    std::vector<LimitTrend> per_s;
    double tolerance = 0.0;
    bool pass = false;
};

LimitsReport check_vanishing_limits(const BoundFamily& bounds, const std::vector<double>& s_samples,
                                    double r_horizon, double tol);

}  // namespace tricenter
