#include "tricenter/splitting.hpp"

#include <algorithm>

#include "tricenter/errors.hpp"

namespace tricenter {

double SplittingReport::worst() const {
    return std::max({sum_identity, annihilation, idempotency, commute_p, commute_qp, commute_qm});
}

SplittingReport check_splitting(const InvariantSplitting& splitting, const EvolutionOperator& T,
                                const std::vector<std::pair<double, double>>& samples,
                                double tolerance, const NormSpec& norm) {
    if (samples.empty()) throw InvalidParams("check_splitting requires at least one sample");
    if (splitting.dim != T.dim())
        throw DimensionError("splitting and evolution operator dimensions differ");
    const int n = splitting.dim;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

    SplittingReport rep;
    rep.tolerance = tolerance;
    auto bump = [&](double& slot, const Eigen::MatrixXd& m, double scale = 1.0) {
        slot = std::max(slot, operator_norm(m, norm) / scale);
    };

    for (const auto& [t, s] : samples) {
        const Eigen::MatrixXd pt = splitting.P(t), qpt = splitting.Qp(t), qmt = splitting.Qm(t);
        if (pt.rows() != n || pt.cols() != n)
            throw DimensionError("projection P(t) has the wrong dimension");
        bump(rep.sum_identity, pt + qpt + qmt - id);
        bump(rep.annihilation, pt * qpt);
        bump(rep.annihilation, pt * qmt);
        bump(rep.annihilation, qpt * pt);
        bump(rep.annihilation, qmt * pt);
        bump(rep.annihilation, qpt * qmt);
        bump(rep.annihilation, qmt * qpt);
        bump(rep.idempotency, pt * pt - pt);
        bump(rep.idempotency, qpt * qpt - qpt);
        bump(rep.idempotency, qmt * qmt - qmt);

        const Eigen::MatrixXd tts = T(t, s);
        const double scale = std::max(1.0, operator_norm(tts, norm));
        const Eigen::MatrixXd ps = splitting.P(s), qps = splitting.Qp(s), qms = splitting.Qm(s);
        bump(rep.commute_p, pt * tts - tts * ps, scale);
        bump(rep.commute_qp, qpt * tts - tts * qps, scale);
        bump(rep.commute_qm, qmt * tts - tts * qms, scale);
    }
    rep.pass = rep.worst() <= tolerance;
    return rep;
}

}  // namespace tricenter
