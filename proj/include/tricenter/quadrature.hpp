#pragma once

#include <functional>
#include <vector>

namespace tricenter {

using ScalarFn1 = std::function<double(double)>;

struct QuadOptions {
    double tol = 1e-10;       // absolute tolerance for the whole integral
    int max_depth = 60;
    /// Interior points where the integrand may lose smoothness (budget kinks
    /// at r = 0, branch switches): the interval is split there first.
    std::vector<double> breakpoints;
};

struct QuadResult {
    double value = 0.0;
    long evals = 0;
    bool converged = true;
};

/// Adaptive Simpson quadrature of f over [a, b] (a > b allowed, signed result).
QuadResult integrate(const ScalarFn1& f, double a, double b, const QuadOptions& opts = {});

struct HalfLineOptions {
    double tol = 1e-10;        // tolerance for each finite segment
    double tail_tol = 1e-12;   // stop once a doubling segment contributes less than this
    double first_segment = 1.0;
    double max_radius = 1e6;   // give up (divergence warning) beyond this distance
    int max_depth = 60;
    std::vector<double> breakpoints;
};

struct HalfLineResult {
    double value = 0.0;
    double truncation_radius = 0.0;  // distance from the endpoint actually covered
    double last_segment = 0.0;       // magnitude of the last segment's contribution
    long evals = 0;
    bool converged = true;           // false: tail still significant at max_radius
    bool decaying = true;            // false: segment contributions were growing
};

/// Integral of f over the half line starting at `endpoint` and extending in
/// `direction` (+1 or -1), computed over geometrically growing segments until
/// the tail is negligible. The returned value is signed as the integral from
/// the finite endpoint outward, i.e. direction=+1 gives int_endpoint^inf,
/// direction=-1 gives int_{-inf}^endpoint.
HalfLineResult integrate_half_line(const ScalarFn1& f, double endpoint, int direction,
                                   const HalfLineOptions& opts = {});

}  // namespace tricenter
