#include "tricenter/evolution.hpp"

#include <array>

#include "tricenter/errors.hpp"

namespace tricenter {

EvolutionOperator EvolutionOperator::closed_form(int dim, TwoTimeMatrixFn fn) {
    if (dim <= 0) throw InvalidParams("evolution operator dimension must be positive");
    EvolutionOperator op;
    op.dim_ = dim;
    op.source_ = Source::ClosedForm;
    op.closed_ = std::move(fn);
    return op;
}

EvolutionOperator EvolutionOperator::integrated(int dim, MatrixFn a, OdeOptions ode) {
    if (dim <= 0) throw InvalidParams("evolution operator dimension must be positive");
    EvolutionOperator op;
    op.dim_ = dim;
    op.source_ = Source::Integrated;
    op.a_ = std::move(a);
    op.ode_ = std::move(ode);
    return op;
}

Eigen::MatrixXd EvolutionOperator::evaluate(double t, double s) const {
    if (source_ == Source::ClosedForm) {
        Eigen::MatrixXd m = closed_(t, s);
        if (m.rows() != dim_ || m.cols() != dim_)
            throw DimensionError("closed-form evolution operator returned a wrongly sized matrix");
        return m;
    }
    if (t == s) return Eigen::MatrixXd::Identity(dim_, dim_);
    // integrate the matrix ODE M' = A(t) M, M(s) = I as one flattened system
    const int n = dim_;
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(n * n);
    for (int i = 0; i < n; ++i) y0[i * n + i] = 1.0;
    auto rhs = [this, n](double tt, const Eigen::VectorXd& y) {
        Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(y.data(), n, n);
        Eigen::MatrixXd dm = a_(tt) * m;
        return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(dm.data(), n * n));
    };
    Eigen::VectorXd yt = integrate_ode(rhs, s, t, y0, ode_);
    return Eigen::Map<const Eigen::MatrixXd>(yt.data(), n, n);
}

CocycleReport check_cocycle(const EvolutionOperator& T,
                            const std::vector<std::array<double, 3>>& samples) {
    if (samples.empty()) throw InvalidParams("check_cocycle requires at least one sample");
    CocycleReport rep;
    rep.samples = static_cast<int>(samples.size());
    for (const auto& [t, r, s] : samples) {
        Eigen::MatrixXd direct = T(t, s);
        Eigen::MatrixXd composed = T(t, r) * T(r, s);
        double scale = std::max(1.0, direct.cwiseAbs().rowwise().sum().maxCoeff());
        double res = (composed - direct).cwiseAbs().rowwise().sum().maxCoeff() / scale;
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.arg_t = t;
            rep.arg_r = r;
            rep.arg_s = s;
        }
    }
    return rep;
}

}  // namespace tricenter
