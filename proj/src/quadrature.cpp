#include "tricenter/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {

struct SimpsonWorker {
    const ScalarFn1& f;
    double tol_per_length;  // allowed error per unit length
    int max_depth;
    long evals = 0;
    bool converged = true;

    double eval(double x) {
        ++evals;
        return f(x);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = eval(lm), frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double err = left + right - whole;
        if (std::abs(err) <= 15.0 * tol_per_length * (b - a) || depth >= max_depth) {
            if (depth >= max_depth && std::abs(err) > 15.0 * tol_per_length * (b - a))
                converged = false;
            return left + right + err / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, depth + 1) +
               recurse(m, b, fm, frm, fb, right, depth + 1);
    }

    double run(double a, double b) {
        if (a == b) return 0.0;
        const double fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, 0);
    }
};

}  // namespace

QuadResult integrate(const ScalarFn1& f, double a, double b, const QuadOptions& opts) {
    QuadResult res;
    if (a == b) return res;
    const double sign = (a <= b) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);

    std::vector<double> cuts{lo};
    for (double c : opts.breakpoints)
        if (c > lo && c < hi) cuts.push_back(c);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    SimpsonWorker w{f, opts.tol / std::max(hi - lo, 1e-300), opts.max_depth};
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) total += w.run(cuts[i], cuts[i + 1]);
    res.value = sign * total;
    res.evals = w.evals;
    res.converged = w.converged;
    return res;
}

HalfLineResult integrate_half_line(const ScalarFn1& f, double endpoint, int direction,
                                   const HalfLineOptions& opts) {
    HalfLineResult res;
    const double dir = direction >= 0 ? 1.0 : -1.0;

    QuadOptions seg_opts;
    seg_opts.tol = opts.tol;
    seg_opts.max_depth = opts.max_depth;
    seg_opts.breakpoints = opts.breakpoints;

    double radius = 0.0;
    double len = opts.first_segment;
    double prev_mean = -1.0;
    int growing = 0;
    while (radius < opts.max_radius) {
        const double a = endpoint + dir * radius;
        const double b = endpoint + dir * (radius + len);
        QuadResult seg = integrate(f, std::min(a, b), std::max(a, b), seg_opts);
        if (!seg.converged) res.converged = false;
        res.value += seg.value;
        res.evals += seg.evals;
        res.last_segment = std::abs(seg.value);
        const double mean = res.last_segment / len;
        radius += len;
        len *= 2.0;

        // divergence watch on the mean integrand level: segment lengths double,
        // so raw contributions grow even across flat stretches of a decaying
        // integrand
        if (prev_mean >= 0.0 && mean > prev_mean * (1.0 + 1e-9)) {
            if (++growing >= 3) {
                res.decaying = false;
                res.converged = false;
                res.truncation_radius = radius;
                return res;
            }
        } else {
            growing = 0;
        }
        prev_mean = mean;

        if (res.last_segment < opts.tail_tol && radius >= 4.0 * opts.first_segment) {
            res.truncation_radius = radius;
            return res;
        }
    }
    res.truncation_radius = radius;
    res.converged = false;  // tail still significant at the maximal radius
    return res;
}

}  // namespace tricenter
