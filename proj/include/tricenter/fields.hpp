#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <vector>

#include "tricenter/bounds.hpp"
#include "tricenter/grid.hpp"
#include "tricenter/norms.hpp"

namespace tricenter {

/// Discrete trajectory field x(t, s, xi) on the t x s x xi tensor grid, stored
/// as full state-space vectors. Queries off the xi-box are extended positively
/// homogeneously (the fields vanish at xi = 0 and grow linearly).
class CenterField {
  public:
    CenterField() = default;
    CenterField(GridSpec grid, int dim);
    CenterField(const CenterField& o)
        : grid_(o.grid_), dim_(o.dim_), data_(o.data_), extrap_(o.extrap_.load()) {}
    CenterField(CenterField&& o) noexcept
        : grid_(o.grid_), dim_(o.dim_), data_(std::move(o.data_)), extrap_(o.extrap_.load()) {}
    CenterField& operator=(const CenterField& o) {
        grid_ = o.grid_;
        dim_ = o.dim_;
        data_ = o.data_;
        extrap_.store(o.extrap_.load());
        return *this;
    }
    CenterField& operator=(CenterField&& o) noexcept {
        grid_ = o.grid_;
        dim_ = o.dim_;
        data_ = std::move(o.data_);
        extrap_.store(o.extrap_.load());
        return *this;
    }

    const GridSpec& grid() const { return grid_; }
    int dim() const { return dim_; }

    double* node(int it, int is, int kxi) { return data_.data() + offset(it, is, kxi); }
    const double* node(int it, int is, int kxi) const { return data_.data() + offset(it, is, kxi); }

    /// xi coordinates of the flattened xi-node index.
    void xi_of(int kxi, double* out) const;

    /// interpolate along t only (s and xi given as node indices)
    void eval_t(double t, int is, int kxi, double* out) const;

    /// full interpolation in (t, s, xi)
    void eval(double t, double s, const double* xi, double* out) const;

    long extrapolation_queries() const { return extrap_.load(std::memory_order_relaxed); }
    void reset_extrapolation_counter() { extrap_.store(0, std::memory_order_relaxed); }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

  private:
    size_t offset(int it, int is, int kxi) const {
        return ((static_cast<size_t>(it) * grid_.s.n + is) * grid_.xi_nodes() + kxi) * dim_;
    }

    GridSpec grid_;
    int dim_ = 0;
    std::vector<double> data_;
    mutable std::atomic<long> extrap_{0};
};

/// Discrete graph map phi(time, xi) with values in the hyperbolic subbundle,
/// stored on the t-grid time nodes so the operator integrands can query it
/// anywhere inside the truncation radius.
class GraphField {
  public:
    GraphField() = default;
    GraphField(GridSpec grid, int dim);
    GraphField(const GraphField& o)
        : grid_(o.grid_), dim_(o.dim_), data_(o.data_), extrap_(o.extrap_.load()) {}
    GraphField(GraphField&& o) noexcept
        : grid_(o.grid_), dim_(o.dim_), data_(std::move(o.data_)), extrap_(o.extrap_.load()) {}
    GraphField& operator=(const GraphField& o) {
        grid_ = o.grid_;
        dim_ = o.dim_;
        data_ = o.data_;
        extrap_.store(o.extrap_.load());
        return *this;
    }
    GraphField& operator=(GraphField&& o) noexcept {
        grid_ = o.grid_;
        dim_ = o.dim_;
        data_ = std::move(o.data_);
        extrap_.store(o.extrap_.load());
        return *this;
    }

    const GridSpec& grid() const { return grid_; }
    int dim() const { return dim_; }

    double* node(int itau, int kxi) { return data_.data() + offset(itau, kxi); }
    const double* node(int itau, int kxi) const { return data_.data() + offset(itau, kxi); }

    void xi_of(int kxi, double* out) const;

    /// interpolation in (time, xi) with positively homogeneous extension
    /// outside the xi-box
    void eval(double time, const double* xi, double* out) const;

    long extrapolation_queries() const { return extrap_.load(std::memory_order_relaxed); }
    void reset_extrapolation_counter() { extrap_.store(0, std::memory_order_relaxed); }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

  private:
    size_t offset(int itau, int kxi) const {
        return (static_cast<size_t>(itau) * grid_.xi_nodes() + kxi) * dim_;
    }

    GridSpec grid_;
    int dim_ = 0;
    std::vector<double> data_;
    mutable std::atomic<long> extrap_{0};
};

/// Graph metric: max over grid nodes with xi != 0 of ||phi - psi|| / ||xi||.
/// Grid maxima are lower bounds on the continuum suprema.
double metric_d(const GraphField& a, const GraphField& b,
                const NormSpec& norm = NormSpec::max_norm());

/// Weighted trajectory metric: max over nodes of ||x - y|| / (alpha_{t,s} ||xi||).
double metric_dprime(const CenterField& a, const CenterField& b, const BoundFamily& bounds,
                     const NormSpec& norm = NormSpec::max_norm());

/// d'' of the pair metric: d'(x, y) + d(phi, psi).
double metric_dsecond(const CenterField& x, const GraphField& phi, const CenterField& y,
                      const GraphField& psi, const BoundFamily& bounds,
                      const NormSpec& norm = NormSpec::max_norm());

}  // namespace tricenter
