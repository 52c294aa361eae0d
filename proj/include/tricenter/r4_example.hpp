#pragma once

#include "tricenter/families.hpp"
#include "tricenter/system.hpp"

namespace tricenter {

/// The shipped four-dimensional system: a diagonal nonautonomous equation whose
/// coefficients are built from four growth functions and four nonuniformity
/// factors, with a closed-form evolution operator, coordinate projections onto
/// (u, v | w | z), and the matching nonuniform trichotomy bounds.
struct R4Example {
    NabcdParams params;
    EvolutionOperator T;           // closed form
    InvariantSplitting splitting;  // P = (u, v, 0, 0), Q+ = w, Q- = z
    MatrixFn generator;            // diagonal A(t)
    BoundFamily bounds;
    bool condition_ok = true;      // growth-compatibility condition at samples

    TrichotomySystem system(const NormSpec& norm = NormSpec::max_norm()) const;
};

/// Builds the example from its growth/nonuniformity functions. When the
/// growth-compatibility condition fails at the sampled grid the example is
/// still constructed (condition_ok = false) since the remaining bounds hold
/// regardless.
R4Example make_r4_example(const NabcdParams& p, double check_horizon = 10.0);

/// Nabcd parameters realizing exponential rates: g_i(t) = exp(-rate_i rho(t))
/// and eps_i(t) = D exp(eps |rho(t)|).
NabcdParams nabcd_from_rho(const RhoParams& p);

}  // namespace tricenter
