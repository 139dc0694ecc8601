#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace santalo {

using Real = double;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Real kNegInf = -std::numeric_limits<Real>::infinity();

/// Natural-log representation of a nonnegative quantity.  A value of exactly
/// zero is encoded as log_magnitude = -inf.  Linear-space values are only
/// materialized for small dimensions; all volume arithmetic stays in logs.
struct LogValue {
    Real log_magnitude = kNegInf;

    constexpr LogValue() = default;

    static constexpr LogValue from_log(Real lg) {
        LogValue v;
        v.log_magnitude = lg;
        return v;
    }

    static LogValue from_value(Real x) {
        if (!(x >= 0))
            throw std::domain_error("LogValue::from_value: negative or non-finite input");
        return from_log(x == 0 ? kNegInf : std::log(x));
    }

    Real value() const { return std::exp(log_magnitude); }
    bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0; }
};

/// log(e^a + e^b), stable for widely separated magnitudes.
inline LogValue log_add(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Real hi = std::max(a.log_magnitude, b.log_magnitude);
    Real lo = std::min(a.log_magnitude, b.log_magnitude);
    return LogValue::from_log(hi + std::log1p(std::exp(lo - hi)));
}

enum class EstimateMethod { monte_carlo, grid, closed_form, analytic_bound };

inline const char* to_string(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::monte_carlo: return "monte-carlo";
        case EstimateMethod::grid: return "grid";
        case EstimateMethod::closed_form: return "closed-form";
        case EstimateMethod::analytic_bound: return "analytic-bound";
    }
    return "?";
}

/// A (possibly stochastic) volume value.  std_err_log is the standard error
/// of the log estimate (equivalently the relative error of the linear value
/// when small).  Closed-form results carry std_err_log = 0.
struct VolumeEstimate {
    LogValue log_value;
    Real std_err_log = 0;
    long samples = 0;
    EstimateMethod method = EstimateMethod::closed_form;
};

/// Probability (or fraction) estimate with a Wilson-interval standard error.
struct ProbEstimate {
    Real value = 0;
    Real std_err = 0;
    long samples = 0;
};

/// Raised when an estimator cannot certify its own accuracy contract
/// (e.g. tail bounds too large at small dimension, or a line search that
/// finds no interior descent).
class diagnostics_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace santalo
