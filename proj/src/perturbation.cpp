#include "tricenter/perturbation.hpp"

#include <cmath>
#include <random>

namespace tricenter {

Perturbation zero_perturbation(int dim) {
    Perturbation p;
    p.budget = LipBudget::zero();
    p.is_zero = true;
    p.f = [dim](double, const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(dim); };
    return p;
}

Perturbation make_test_perturbation(const LipBudget& budget, int dim) {
    Perturbation p;
    p.budget = budget;
    p.f = [budget, dim](double t, const Eigen::VectorXd& v) {
        Eigen::VectorXd out(dim);
        const double b = budget.at(t);
        for (int i = 0; i < dim; ++i) out[i] = b * std::sin(v[(i + 1) % dim]);
        return out;
    };
    return p;
}

LipschitzAuditReport audit_perturbation(const Perturbation& f, int dim, double box_radius,
                                        double time_radius, int samples, std::uint64_t seed,
                                        const NormSpec& norm) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-box_radius, box_radius);
    std::uniform_real_distribution<double> times(-time_radius, time_radius);

    LipschitzAuditReport rep;
    rep.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const double t = times(rng);
        Eigen::VectorXd x(dim), y(dim);
        for (int c = 0; c < dim; ++c) {
            x[c] = box(rng);
            y[c] = box(rng);
        }
        const double b = f.budget.at(t);
        const double dxy = vector_norm(Eigen::VectorXd(x - y), norm);
        if (dxy > 0.0) {
            const double lip = vector_norm(Eigen::VectorXd(f(t, x) - f(t, y)), norm) / dxy;
            rep.worst_ratio = std::max(rep.worst_ratio, b > 0.0 ? lip / b : lip);
        }
        const double nx = vector_norm(x, norm);
        if (nx > 0.0) {
            const double growth = vector_norm(f(t, x), norm) / nx;
            rep.worst_growth = std::max(rep.worst_growth, b > 0.0 ? growth / b : growth);
        }
        rep.worst_zero =
            std::max(rep.worst_zero, vector_norm(f(t, Eigen::VectorXd::Zero(dim)), norm));
    }
    rep.pass = rep.worst_ratio <= 1.0 + 1e-12 && rep.worst_growth <= 1.0 + 1e-12 &&
               rep.worst_zero == 0.0;
    return rep;
}

}  // namespace tricenter
