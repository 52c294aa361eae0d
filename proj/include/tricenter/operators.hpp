#pragma once

#include "tricenter/fields.hpp"
#include "tricenter/grid.hpp"
#include "tricenter/perturbation.hpp"
#include "tricenter/system.hpp"

namespace tricenter {

/// One discretized fixed-point problem: system, perturbation, grids, and the
/// contraction-space constants from a passing hypothesis certificate.
struct LpProblem {
    const TrichotomySystem* sys = nullptr;
    const Perturbation* f = nullptr;
    GridSpec grid;
    double M = 1.0;
    double N = 0.0;
    double q = 0.0;
};

/// Tail certificate for the half-line operator integrals truncated at the grid
/// radius: worst estimated dropped mass, scaled by the membership constant
/// M (1 + N) that converts integrand mass into graph values.
struct TruncationCertificate {
    double worst_tail = 0.0;
    double at_time = 0.0;
    bool ok = false;
};

TruncationCertificate certify_truncation(const LpProblem& p);

/// x0(t, s, xi) = T_{t,s} P_s xi: the trajectory field of the unperturbed
/// equation, the customary starting iterate.
CenterField initial_center_field(const LpProblem& p);
GraphField zero_graph_field(const LpProblem& p);

/// Trajectory update: (J phi-pair)(t, s, xi) = T_{t,s} P_s xi plus the center
/// projection of the perturbation transported along the trajectory.
CenterField apply_J(const LpProblem& p, const CenterField& x, const GraphField& phi);

/// Unstable / stable graph parts: half-line integrals of the transported
/// perturbation against Q+ (from -inf) and Q- (to +inf, with a sign flip),
/// truncated at the grid radius.
GraphField apply_Lplus(const LpProblem& p, const CenterField& x, const GraphField& phi);
GraphField apply_Lminus(const LpProblem& p, const CenterField& x, const GraphField& phi);

/// Full graph update L = L+ + L-.
GraphField apply_L(const LpProblem& p, const CenterField& x, const GraphField& phi);

}  // namespace tricenter
