#pragma once

#include <cmath>
#include <cstdint>

#include "tricenter/errors.hpp"

namespace tricenter {

/// Uniform axis of n nodes on [lo, hi].
struct Axis {
    double lo = -1.0;
    double hi = 1.0;
    int n = 2;

    double step() const { return (hi - lo) / (n - 1); }
    double node(int i) const { return lo + i * step(); }

    void validate() const {
        if (n < 2) throw InvalidParams("axis needs at least 2 nodes");
        if (!(hi > lo)) throw InvalidParams("axis range must be increasing");
    }
};

enum class Interp { Multilinear, Cubic };

/// Per-axis interpolation taps: node indices (clamped into range) and weights.
struct Taps {
    int idx[4] = {0, 0, 0, 0};
    double w[4] = {0, 0, 0, 0};
    int count = 0;
};

inline Taps taps_for(const Axis& a, double x, Interp interp) {
    Taps t;
    const double h = a.step();
    double u = (x - a.lo) / h;
    if (u <= 0.0) u = 0.0;
    if (u >= a.n - 1) u = a.n - 1;
    int i0 = static_cast<int>(u);
    if (i0 > a.n - 2) i0 = a.n - 2;
    double f = u - i0;
    if (f < 1e-13) {  // on-node shortcut
        t.count = 1;
        t.idx[0] = i0;
        t.w[0] = 1.0;
        return t;
    }
    if (f > 1.0 - 1e-13 && i0 + 1 <= a.n - 1) {
        t.count = 1;
        t.idx[0] = i0 + 1;
        t.w[0] = 1.0;
        return t;
    }
    if (interp == Interp::Multilinear) {
        t.count = 2;
        t.idx[0] = i0;
        t.idx[1] = i0 + 1;
        t.w[0] = 1.0 - f;
        t.w[1] = f;
        return t;
    }
    // Catmull-Rom taps, edge nodes duplicated
    const double f2 = f * f, f3 = f2 * f;
    t.count = 4;
    t.idx[0] = (i0 > 0) ? i0 - 1 : 0;
    t.idx[1] = i0;
    t.idx[2] = i0 + 1;
    t.idx[3] = (i0 + 2 <= a.n - 1) ? i0 + 2 : a.n - 1;
    t.w[0] = 0.5 * (-f + 2.0 * f2 - f3);
    t.w[1] = 0.5 * (2.0 - 5.0 * f2 + 3.0 * f3);
    t.w[2] = 0.5 * (f + 4.0 * f2 - 3.0 * f3);
    t.w[3] = 0.5 * (-f2 + f3);
    return t;
}

/// Tensor grids of the discretized pair: x lives on t x s x xi^dim_center,
/// the graph map on t x xi^dim_center (its time axis reuses the t-grid so the
/// operator integrands never query it beyond the represented range).
struct GridSpec {
    Axis t{-5.0, 5.0, 41};
    Axis s{-5.0, 5.0, 21};
    Axis xi{-1.0, 1.0, 9};
    int dim_center = 2;
    double trunc_radius = 0.0;  // 0 = t.hi
    double tail_tol = 2e-4;     // certified truncation budget for the half-line integrals
    Interp interp = Interp::Multilinear;

    double effective_trunc_radius() const { return trunc_radius > 0.0 ? trunc_radius : t.hi; }

    int xi_nodes() const {
        int m = 1;
        for (int d = 0; d < dim_center; ++d) m *= xi.n;
        return m;
    }

    void validate() const {
        t.validate();
        s.validate();
        xi.validate();
        if (dim_center < 1 || dim_center > 3)
            throw InvalidParams("dim_center must be 1, 2 or 3");
        if (t.lo > s.lo || t.hi < s.hi)
            throw InvalidParams("the t-grid range must contain the s-grid range");
        if (effective_trunc_radius() > t.hi + 1e-12)
            throw InvalidParams("truncation radius must not exceed the t-grid range");
        if (!(tail_tol > 0.0)) throw InvalidParams("tail tolerance must be positive");
    }

    /// Same ranges, doubled node density on every axis.
    GridSpec refined() const {
        GridSpec g = *this;
        g.t.n = 2 * t.n - 1;
        g.s.n = 2 * s.n - 1;
        g.xi.n = 2 * xi.n - 1;
        return g;
    }
};

}  // namespace tricenter
