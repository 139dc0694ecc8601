#pragma once

#include "santalo/types.hpp"

namespace santalo {

/// Exponent of an lp norm.  Infinity is a distinguished state, not a large
/// float, so 1/p never goes through floating-point rounding.
class LpExponent {
  public:
    explicit LpExponent(Real p) : p_(p), inf_(false) {
        if (!(p >= 1) || std::isinf(p))
            throw std::domain_error("LpExponent: p must be finite and >= 1 (use infinity())");
    }

    static LpExponent infinity() {
        LpExponent e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }

    Real value() const {
        if (inf_) throw std::logic_error("LpExponent::value: exponent is infinite");
        return p_;
    }

    /// Conjugate exponent q with 1/p + 1/q = 1.
    LpExponent dual() const {
        if (inf_) return LpExponent(1.0);
        if (p_ == 1.0) return infinity();
        return LpExponent(p_ / (p_ - 1.0));
    }

  private:
    LpExponent() : p_(0), inf_(true) {}
    Real p_;
    bool inf_;
};

/// ln Gamma(x) for x > 0.  Lanczos approximation (g = 7, 9 terms); the
/// recovered Gamma is accurate to ~1e-14 relative on [0.5, 10] and the log is
/// accurate to a few ulps of its magnitude for large arguments.
Real log_gamma(Real x);

/// ln vol_n(B_p^n) = n ln(2 Gamma(1 + 1/p)) - ln Gamma(1 + n/p);
/// for p = infinity this is n ln 2.
LogValue lp_ball_log_volume(LpExponent p, int n);

inline LogValue lp_ball_log_volume(Real p, int n) {
    return lp_ball_log_volume(LpExponent(p), n);
}

struct RootBounds {
    Real lower = 0;
    Real upper = 0;
};

/// Stirling sandwich for vol_n(B_2^n)^{1/n}:
///   sqrt(2 pi e) / (sqrt(n) (pi n)^{1/2n} e^{1/(6n(n-2))})
///     <= vol_n(B_2^n)^{1/n} <=
///   sqrt(2 pi e) / (sqrt(n) (pi n)^{1/2n}).
/// Requires n >= 3.
RootBounds euclid_ball_root_bounds(int n);

}  // namespace santalo
