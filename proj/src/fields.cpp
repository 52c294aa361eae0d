#include "tricenter/fields.hpp"

#include <algorithm>
#include <cmath>

namespace tricenter {

namespace {

// xi coordinates of a flattened tensor index (row-major over dimensions)
void decode_xi(const GridSpec& g, int kxi, double* out) {
    for (int d = g.dim_center - 1; d >= 0; --d) {
        out[d] = g.xi.node(kxi % g.xi.n);
        kxi /= g.xi.n;
    }
}

// scale factor pulling an off-box query onto the box boundary; 1 if inside
double box_scale(const GridSpec& g, const double* xi, double* clamped) {
    double m = 0.0;
    for (int d = 0; d < g.dim_center; ++d) m = std::max(m, std::abs(xi[d]));
    const double r = std::max(std::abs(g.xi.lo), std::abs(g.xi.hi));
    if (m <= r) {
        std::copy(xi, xi + g.dim_center, clamped);
        return 1.0;
    }
    const double lambda = m / r;
    for (int d = 0; d < g.dim_center; ++d) clamped[d] = xi[d] / lambda;
    return lambda;
}

}  // namespace

CenterField::CenterField(GridSpec grid, int dim) : grid_(std::move(grid)), dim_(dim) {
    grid_.validate();
    data_.assign(static_cast<size_t>(grid_.t.n) * grid_.s.n * grid_.xi_nodes() * dim_, 0.0);
}

void CenterField::xi_of(int kxi, double* out) const { decode_xi(grid_, kxi, out); }

void CenterField::eval_t(double t, int is, int kxi, double* out) const {
    const Taps tt = taps_for(grid_.t, t, grid_.interp);
    std::fill(out, out + dim_, 0.0);
    for (int a = 0; a < tt.count; ++a) {
        const double* v = node(tt.idx[a], is, kxi);
        const double w = tt.w[a];
        for (int c = 0; c < dim_; ++c) out[c] += w * v[c];
    }
}

void CenterField::eval(double t, double s, const double* xi, double* out) const {
    double boxed[3];
    const double lambda = box_scale(grid_, xi, boxed);
    if (lambda > 1.0) extrap_.fetch_add(1, std::memory_order_relaxed);

    const Taps tt = taps_for(grid_.t, t, grid_.interp);
    const Taps ts = taps_for(grid_.s, s, grid_.interp);
    Taps tx[3];
    for (int d = 0; d < grid_.dim_center; ++d) tx[d] = taps_for(grid_.xi, boxed[d], grid_.interp);

    std::fill(out, out + dim_, 0.0);
    int combo[3] = {0, 0, 0};
    const int dims = grid_.dim_center;
    for (;;) {
        double wx = 1.0;
        int kxi = 0;
        for (int d = 0; d < dims; ++d) {
            wx *= tx[d].w[combo[d]];
            kxi = kxi * grid_.xi.n + tx[d].idx[combo[d]];
        }
        if (wx != 0.0) {
            for (int a = 0; a < tt.count; ++a)
                for (int b = 0; b < ts.count; ++b) {
                    const double w = tt.w[a] * ts.w[b] * wx;
                    if (w == 0.0) continue;
                    const double* v = node(tt.idx[a], ts.idx[b], kxi);
                    for (int c = 0; c < dim_; ++c) out[c] += w * v[c];
                }
        }
        int d = dims - 1;
        while (d >= 0 && ++combo[d] == tx[d].count) combo[d--] = 0;
        if (d < 0) break;
    }
    if (lambda > 1.0)
        for (int c = 0; c < dim_; ++c) out[c] *= lambda;
}

GraphField::GraphField(GridSpec grid, int dim) : grid_(std::move(grid)), dim_(dim) {
    grid_.validate();
    data_.assign(static_cast<size_t>(grid_.t.n) * grid_.xi_nodes() * dim_, 0.0);
}

void GraphField::xi_of(int kxi, double* out) const { decode_xi(grid_, kxi, out); }

void GraphField::eval(double time, const double* xi, double* out) const {
    double boxed[3];
    const double lambda = box_scale(grid_, xi, boxed);
    if (lambda > 1.0) extrap_.fetch_add(1, std::memory_order_relaxed);

    const Taps tt = taps_for(grid_.t, time, grid_.interp);
    Taps tx[3];
    for (int d = 0; d < grid_.dim_center; ++d) tx[d] = taps_for(grid_.xi, boxed[d], grid_.interp);

    std::fill(out, out + dim_, 0.0);
    int combo[3] = {0, 0, 0};
    const int dims = grid_.dim_center;
    for (;;) {
        double wx = 1.0;
        int kxi = 0;
        for (int d = 0; d < dims; ++d) {
            wx *= tx[d].w[combo[d]];
            kxi = kxi * grid_.xi.n + tx[d].idx[combo[d]];
        }
        if (wx != 0.0) {
            for (int a = 0; a < tt.count; ++a) {
                const double w = tt.w[a] * wx;
                if (w == 0.0) continue;
                const double* v = node(tt.idx[a], kxi);
                for (int c = 0; c < dim_; ++c) out[c] += w * v[c];
            }
        }
        int d = dims - 1;
        while (d >= 0 && ++combo[d] == tx[d].count) combo[d--] = 0;
        if (d < 0) break;
    }
    if (lambda > 1.0)
        for (int c = 0; c < dim_; ++c) out[c] *= lambda;
}

namespace {

double xi_vec_norm(const double* xi, int dims, const NormSpec& norm) {
    Eigen::Map<const Eigen::VectorXd> v(xi, dims);
    return vector_norm(v, norm);
}

}  // namespace

double metric_d(const GraphField& a, const GraphField& b, const NormSpec& norm) {
    if (a.dim() != b.dim() || a.grid().t.n != b.grid().t.n ||
        a.grid().xi_nodes() != b.grid().xi_nodes())
        throw DimensionError("graph fields live on different grids");
    const GridSpec& g = a.grid();
    const int nk = g.xi_nodes();
    double worst = 0.0;
    Eigen::VectorXd diff(a.dim());
    double xi[3];
    for (int it = 0; it < g.t.n; ++it)
        for (int k = 0; k < nk; ++k) {
            a.xi_of(k, xi);
            const double nxi = xi_vec_norm(xi, g.dim_center, norm);
            if (nxi == 0.0) continue;
            const double* va = a.node(it, k);
            const double* vb = b.node(it, k);
            for (int c = 0; c < a.dim(); ++c) diff[c] = va[c] - vb[c];
            worst = std::max(worst, vector_norm(diff, norm) / nxi);
        }
    return worst;
}

double metric_dprime(const CenterField& a, const CenterField& b, const BoundFamily& bounds,
                     const NormSpec& norm) {
    if (a.dim() != b.dim() || a.grid().t.n != b.grid().t.n || a.grid().s.n != b.grid().s.n ||
        a.grid().xi_nodes() != b.grid().xi_nodes())
        throw DimensionError("trajectory fields live on different grids");
    const GridSpec& g = a.grid();
    const int nk = g.xi_nodes();
    double worst = 0.0;
    Eigen::VectorXd diff(a.dim());
    double xi[3];
    for (int it = 0; it < g.t.n; ++it) {
        const double t = g.t.node(it);
        for (int is = 0; is < g.s.n; ++is) {
            const double s = g.s.node(is);
            const double alpha = bounds.alpha_at(t, s);
            for (int k = 0; k < nk; ++k) {
                a.xi_of(k, xi);
                const double nxi = xi_vec_norm(xi, g.dim_center, norm);
                if (nxi == 0.0) continue;
                const double* va = a.node(it, is, k);
                const double* vb = b.node(it, is, k);
                for (int c = 0; c < a.dim(); ++c) diff[c] = va[c] - vb[c];
                worst = std::max(worst, vector_norm(diff, norm) / (alpha * nxi));
            }
        }
    }
    return worst;
}

double metric_dsecond(const CenterField& x, const GraphField& phi, const CenterField& y,
                      const GraphField& psi, const BoundFamily& bounds, const NormSpec& norm) {
    return metric_dprime(x, y, bounds, norm) + metric_d(phi, psi, norm);
}

}  // namespace tricenter
