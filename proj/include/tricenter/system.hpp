#pragma once

#include <Eigen/Dense>

#include "tricenter/bounds.hpp"
#include "tricenter/errors.hpp"
#include "tricenter/evolution.hpp"
#include "tricenter/norms.hpp"
#include "tricenter/splitting.hpp"

namespace tricenter {

/// Everything the manifold solver needs about one linear system: evolution
/// operator, invariant splitting, trichotomy bounds, and a fixed coordinate
/// basis of the center bundle (the shipped systems use coordinate projections,
/// so one basis serves all times).
struct TrichotomySystem {
    int dim = 0;
    int dim_center = 0;
    EvolutionOperator T;
    InvariantSplitting splitting;
    BoundFamily bounds;
    Eigen::MatrixXd center_basis;  // dim x dim_center
    MatrixFn generator;            // A(t) for flowing the perturbed equation; may be empty
    NormSpec norm = NormSpec::max_norm();

    Eigen::MatrixXd center_pinv;  // (B^T B)^{-1} B^T, cached by finalize()

    void finalize() {
        if (center_basis.rows() != dim || center_basis.cols() != dim_center)
            throw DimensionError("center basis must be dim x dim_center");
        center_pinv = (center_basis.transpose() * center_basis)
                          .ldlt()
                          .solve(center_basis.transpose());
    }

    Eigen::VectorXd embed_center(const double* xi) const {
        return center_basis * Eigen::Map<const Eigen::VectorXd>(xi, dim_center);
    }
    void center_coords(const Eigen::VectorXd& x, double* xi) const {
        Eigen::Map<Eigen::VectorXd>(xi, dim_center) = center_pinv * x;
    }
};

}  // namespace tricenter
