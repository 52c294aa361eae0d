#pragma once

#include <Eigen/Dense>
#include <string>

namespace tricenter {

/// Vector norm choice for states; also fixes the induced operator norm used by
/// all bound checks. The default is the max norm, under which induced norms of
/// matrices have the exact closed form (max absolute row sum).
struct NormSpec {
    enum class Kind { Max, Euclidean, P };

    Kind kind = Kind::Max;
    double p = 2.0;  // only used for Kind::P

    static NormSpec max_norm() { return {Kind::Max, 0.0}; }
    static NormSpec euclidean() { return {Kind::Euclidean, 2.0}; }
    static NormSpec p_norm(double p);

    std::string name() const;
};

/// Norm of a state vector.
double vector_norm(const Eigen::VectorXd& v, const NormSpec& spec = NormSpec::max_norm());

/// Induced operator norm. Exact for the max norm; estimated by a 50-iteration
/// power-type method (Boyd/Higham) otherwise, which yields a lower bound that
/// is sharp in practice for the small dense matrices handled here.
double operator_norm(const Eigen::MatrixXd& m, const NormSpec& spec = NormSpec::max_norm());

}  // namespace tricenter
