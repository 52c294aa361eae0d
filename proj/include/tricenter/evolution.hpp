#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "tricenter/ode.hpp"

namespace tricenter {

using MatrixFn = std::function<Eigen::MatrixXd(double)>;
using TwoTimeMatrixFn = std::function<Eigen::MatrixXd(double, double)>;

/// Linear evolution operator (t, s) -> T_{t,s} of v' = A(t) v, either given in
/// closed form or integrated column-by-column from A(t).
class EvolutionOperator {
  public:
    enum class Source { ClosedForm, Integrated };

    static EvolutionOperator closed_form(int dim, TwoTimeMatrixFn fn);
    static EvolutionOperator integrated(int dim, MatrixFn a, OdeOptions ode = make_default_ode());

    Eigen::MatrixXd evaluate(double t, double s) const;
    Eigen::MatrixXd operator()(double t, double s) const { return evaluate(t, s); }

    int dim() const { return dim_; }
    Source source() const { return source_; }
    const MatrixFn& generator() const { return a_; }  // empty for closed-form operators

  private:
    static OdeOptions make_default_ode() {
        OdeOptions o;
        o.rel_tol = 1e-11;
        o.abs_tol = 1e-13;
        o.breakpoints = {0.0};
        return o;
    }

    int dim_ = 0;
    Source source_ = Source::ClosedForm;
    TwoTimeMatrixFn closed_;
    MatrixFn a_;
    OdeOptions ode_;
};

struct CocycleReport {
    double max_residual = 0.0;       // relative to max(1, ||T_{t,s}||)
    double arg_t = 0.0, arg_r = 0.0, arg_s = 0.0;
    int samples = 0;
};

/// Worst relative residual ||T_{t,r} T_{r,s} - T_{t,s}|| over (t, r, s) samples.
CocycleReport check_cocycle(const EvolutionOperator& T,
                            const std::vector<std::array<double, 3>>& samples);

}  // namespace tricenter
