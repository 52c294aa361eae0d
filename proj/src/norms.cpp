#include "tricenter/norms.hpp"

#include <cmath>
#include <limits>

#include "tricenter/errors.hpp"

namespace tricenter {

NormSpec NormSpec::p_norm(double p) {
    if (!(p >= 1.0)) throw InvalidParams("p-norm requires p >= 1");
    return {Kind::P, p};
}

std::string NormSpec::name() const {
    switch (kind) {
        case Kind::Max: return "max";
        case Kind::Euclidean: return "euclidean";
        case Kind::P: return "p(" + std::to_string(p) + ")";
    }
    return "?";
}

double vector_norm(const Eigen::VectorXd& v, const NormSpec& spec) {
    switch (spec.kind) {
        case NormSpec::Kind::Max: return v.lpNorm<Eigen::Infinity>();
        case NormSpec::Kind::Euclidean: return v.norm();
        case NormSpec::Kind::P: {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), spec.p);
            return std::pow(acc, 1.0 / spec.p);
        }
    }
    return 0.0;
}

namespace {

// Vector of unit p'-norm maximizing x^T y for fixed y (duality map), used by the
// power-type iteration below.
Eigen::VectorXd dual_vector(const Eigen::VectorXd& y, double p) {
    const Eigen::Index n = y.size();
    Eigen::VectorXd z(n);
    if (std::isinf(p)) {
        // dual of max norm: put all weight on the largest entry
        Eigen::Index imax = 0;
        y.cwiseAbs().maxCoeff(&imax);
        z.setZero();
        z[imax] = (y[imax] >= 0.0) ? 1.0 : -1.0;
        return z;
    }
    if (p == 1.0) {
        for (Eigen::Index i = 0; i < n; ++i) z[i] = (y[i] > 0.0) - (y[i] < 0.0);
        return z;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        z[i] = ((y[i] >= 0.0) ? 1.0 : -1.0) * std::pow(std::abs(y[i]), p - 1.0);
    double nz = 0.0;
    const double q = p / (p - 1.0);
    for (Eigen::Index i = 0; i < n; ++i) nz += std::pow(std::abs(z[i]), q);
    nz = std::pow(nz, 1.0 / q);
    if (nz > 0.0) z /= nz;
    return z;
}

double pnorm_of(const Eigen::VectorXd& v, double p) {
    if (std::isinf(p)) return v.lpNorm<Eigen::Infinity>();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), p);
    return std::pow(acc, 1.0 / p);
}

// Boyd's power method for induced p-norms, fixed iteration cap.
double power_norm(const Eigen::MatrixXd& m, double p) {
    const int kMaxIters = 50;
    const Eigen::Index n = m.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    x /= pnorm_of(x, p);
    double est = 0.0;
    const double q = std::isinf(p) ? 1.0 : (p == 1.0 ? std::numeric_limits<double>::infinity()
                                                     : p / (p - 1.0));
    for (int it = 0; it < kMaxIters; ++it) {
        Eigen::VectorXd y = m * x;
        double ny = pnorm_of(y, p);
        if (ny == 0.0) return 0.0;
        est = ny;
        Eigen::VectorXd z = m.transpose() * dual_vector(y, p);
        double nz = pnorm_of(z, q);
        if (nz <= est * (1.0 + 1e-14)) break;  // stationary: est is the norm
        x = dual_vector(z, q);
        double nx = pnorm_of(x, p);
        if (nx > 0.0) x /= nx;
    }
    return est;
}

}  // namespace

double operator_norm(const Eigen::MatrixXd& m, const NormSpec& spec) {
    if (m.size() == 0) return 0.0;
    switch (spec.kind) {
        case NormSpec::Kind::Max:
            return m.cwiseAbs().rowwise().sum().maxCoeff();
        case NormSpec::Kind::Euclidean:
            return power_norm(m, 2.0);
        case NormSpec::Kind::P:
            if (spec.p == 1.0) return m.cwiseAbs().colwise().sum().maxCoeff();
            if (std::isinf(spec.p)) return m.cwiseAbs().rowwise().sum().maxCoeff();
            return power_norm(m, spec.p);
    }
    return 0.0;
}

}  // namespace tricenter
