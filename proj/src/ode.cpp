#include "tricenter/ode.hpp"

#include <algorithm>
#include <cmath>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct Stepper {
    const OdeRhs& rhs;
    OdeOptions opts;
    OdeStats* stats;

    Eigen::VectorXd integrate_segment(double t0, double t1, Eigen::VectorXd y) {
        const double span = t1 - t0;
        if (span == 0.0) return y;
        const double dir = span > 0.0 ? 1.0 : -1.0;
        const double hmin = opts.min_step * std::abs(span);

        Eigen::VectorXd k1 = rhs(t0, y);
        if (stats) ++stats->rhs_evals;
        double h = opts.initial_step > 0.0 ? dir * opts.initial_step : initial_guess(t0, y, k1, dir);
        h = dir * std::min(std::abs(h), std::abs(span));

        double t = t0;
        Eigen::VectorXd k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()), k6(y.size()),
            k7(y.size()), ynew(y.size());
        long guard = 0;
        while (dir * (t1 - t) > 0.0) {
            if (++guard > opts.max_steps)
                throw OdeError("ode integration exceeded the step budget");
            if (dir * (t + h - t1) > 0.0) h = t1 - t;

            k2 = rhs(t + c2 * h, y + h * (a21 * k1));
            k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
            k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            k7 = rhs(t + h, ynew);
            if (stats) stats->rhs_evals += 6;

            // scaled error estimate
            double err = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                 e7 * k7[i]);
                double sc = opts.abs_tol +
                            opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err = std::max(err, std::abs(ei) / sc);
            }

            if (err <= 1.0) {
                t += h;
                y.swap(ynew);
                k1.swap(k7);  // FSAL
                if (stats) ++stats->steps;
            } else {
                if (stats) ++stats->rejected;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            if (std::abs(h) < hmin && dir * (t1 - t) > hmin)
                throw OdeError("ode step size underflow (stiffness?) at t = " + std::to_string(t));
        }
        return y;
    }

    double initial_guess(double t0, const Eigen::VectorXd& y, const Eigen::VectorXd& f0,
                         double dir) const {
        double ny = y.lpNorm<Eigen::Infinity>();
        double nf = f0.lpNorm<Eigen::Infinity>();
        double h = (nf > 1e-12) ? 0.01 * (ny + 1.0) / nf : 1e-3;
        return dir * std::min(h, 0.1);
    }
};

}  // namespace

Eigen::VectorXd integrate_ode(const OdeRhs& rhs, double t0, double t1, Eigen::VectorXd y0,
                              const OdeOptions& opts, OdeStats* stats) {
    Stepper st{rhs, opts, stats};
    if (opts.breakpoints.empty() || t0 == t1) return st.integrate_segment(t0, t1, std::move(y0));

    // split the interval at interior breakpoints, keeping integration direction
    std::vector<double> cuts;
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    for (double b : opts.breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    if (t0 > t1) std::reverse(cuts.begin(), cuts.end());
    cuts.push_back(t1);

    double t = t0;
    Eigen::VectorXd y = std::move(y0);
    for (double next : cuts) {
        y = st.integrate_segment(t, next, std::move(y));
        t = next;
    }
    return y;
}

}  // namespace tricenter
