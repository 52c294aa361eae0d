#pragma once

#include <stdexcept>
#include <string>

namespace tricenter {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched dimensions between operators, splittings or states.
struct DimensionError : Error {
    using Error::Error;
};

/// Parameters violate a type invariant (non-positive g, D < 1, non-monotone rho, ...).
struct InvalidParams : Error {
    using Error::Error;
};

/// A Lipschitz budget cannot be formed because a positivity condition fails.
struct BudgetUndefined : Error {
    using Error::Error;
};

/// The smallness condition 2*sigma + 2*omega < 1 does not hold.
struct HypothesisViolated : Error {
    using Error::Error;
};

/// Quadrature failed to converge (non-decaying tail, depth exhausted).
struct QuadratureError : Error {
    using Error::Error;
};

/// Adaptive ODE step size underflowed (stiffness) or step budget exhausted.
struct OdeError : Error {
    using Error::Error;
};

/// Fixed-point iteration exceeded its iteration budget.
struct NonConvergence : Error {
    using Error::Error;
};

/// A requested truncation tolerance cannot be certified at the configured radius.
struct TruncationError : Error {
    using Error::Error;
};

/// Malformed or incomplete run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace tricenter
