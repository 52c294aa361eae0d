#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tricenter/evolution.hpp"
#include "tricenter/norms.hpp"

namespace tricenter {

/// Time-dependent projections P_t, Q+_t, Q-_t decomposing the state space into
/// center, unstable and stable directions.
struct InvariantSplitting {
    int dim = 0;
    MatrixFn P;
    MatrixFn Qp;
    MatrixFn Qm;
};

/// Residuals of the splitting axioms, one entry per axiom, maximized over the
/// sampled times. All residuals are relative to max(1, ||T_{t,s}||) where a
/// product with the evolution operator is involved.
struct SplittingReport {
    double sum_identity = 0.0;   // P + Q+ + Q- = I
    double annihilation = 0.0;   // all six cross products vanish
    double idempotency = 0.0;    // P^2 = P and likewise for Q+-
    double commute_p = 0.0;      // P_t T_{t,s} = T_{t,s} P_s
    double commute_qp = 0.0;     // Q+_t T_{t,s} = T_{t,s} Q+_s
    double commute_qm = 0.0;     // Q-_t T_{t,s} = T_{t,s} Q-_s
    double tolerance = 0.0;
    bool pass = false;

    double worst() const;
};

SplittingReport check_splitting(const InvariantSplitting& splitting, const EvolutionOperator& T,
                                const std::vector<std::pair<double, double>>& samples,
                                double tolerance = 1e-9,
                                const NormSpec& norm = NormSpec::max_norm());

}  // namespace tricenter
