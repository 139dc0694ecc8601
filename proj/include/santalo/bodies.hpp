#pragma once

#include "santalo/specfun.hpp"
#include "santalo/types.hpp"

#include <functional>

namespace santalo {

/// lp norm of an Eigen expression for a runtime exponent.
template <class Derived>
Real lp_norm(const Eigen::MatrixBase<Derived>& x, const LpExponent& p) {
    if (p.is_infinite()) return x.template lpNorm<Eigen::Infinity>();
    const Real pv = p.value();
    if (pv == 1.0) return x.template lpNorm<1>();
    if (pv == 2.0) return x.template lpNorm<2>();
    return std::pow(x.array().abs().pow(pv).sum(), 1.0 / pv);
}

/// A star body K in R^n, evaluated about an interior anchor point.
///
/// `gauge` is the Minkowski functional of K - anchor (its argument is a point
/// in anchor-centered coordinates); `support` is h_K of the body itself,
/// about the ambient origin, and is empty when no exact form is known.
/// Bodies are immutable after construction and their evaluators are pure, so
/// unrestricted concurrent use is fine.
struct Body {
    int dim = 0;
    Vector anchor;
    std::function<Real(const Vector&)> gauge;
    std::function<Real(const Vector&)> support;
    Real in_radius = 0;   // largest known r with anchor + r B_2 inside K
    Real out_radius = 0;  // smallest known R with K inside anchor + R B_2
    bool origin_symmetric = false;
    int symmetry_axis = -1;  // axis of rotational symmetry, -1 when none

    bool has_support() const { return static_cast<bool>(support); }

    /// Membership of an absolute point.
    bool contains(const Vector& x) const { return gauge(x - anchor) <= 1.0; }

    /// h_{K - x}(u) = h_K(u) - <x, u>; requires a support evaluator.
    Real support_about(const Vector& x, const Vector& u) const {
        return support(u) - x.dot(u);
    }
};

/// Parameters of the hull body co[(K, -a), (L, b)] in R^{n+1}, with
/// K = B_2^n / vol(B_2^n)^{1/n} and L = B_inf^n / 2 as its two faces.
struct HullBodyParams {
    int n = 0;
    Real a = 1.0;
    Real b = 1.0;
};

/// A horizontal section of the polar hull body: r2 B_2^n intersected with
/// r1 B_1^n.  Degenerate (zero volume) when either scale vanishes.
struct SectionBody {
    int n = 0;
    Real r2 = 0;  // Euclidean-ball scale
    Real r1 = 0;  // cross-polytope scale

    bool degenerate() const { return r2 <= 0.0 || r1 <= 0.0; }

    Real gauge(const Vector& x) const {
        if (degenerate()) return x.isZero(0) ? 0.0 : std::numeric_limits<Real>::infinity();
        return std::max(x.norm() / r2, x.lpNorm<1>() / r1);
    }

    Body to_body() const;
};

/// Unit ball of l_p^n scaled by `scale`; support present for every p via the
/// dual norm, radii exact.
Body make_lp_ball(LpExponent p, int n, Real scale = 1.0);

inline Body make_lp_ball(Real p, int n, Real scale = 1.0) {
    return make_lp_ball(LpExponent(p), n, scale);
}

/// Section of the polar hull body at height s in [-1/a, 1/b]:
/// r2 = (1 + s a) vol(B_2^n)^{1/n}, r1 = 2 (1 - s b).
SectionBody polar_section(const HullBodyParams& params, Real s);

/// Half of the unit Euclidean ball, {x : |x|_2 <= 1, x_1 >= 0}.  Gauge is
/// taken about the interior anchor (1/4, 0, ..., 0); support is exact.
Body make_half_ball(int n);

/// The polar of the shifted Euclidean ball B_2^n(lambda e_1, 1) with
/// 0 <= lambda < 1, i.e. the ellipsoid
///   (1-l^2)^2 (x_1 + l/(1-l^2))^2 + (1-l^2)(x_2^2 + ... + x_n^2) <= 1,
/// anchored at its center.
Body shifted_ball_polar_ellipsoid(Real lambda, int n);

/// Body re-anchored at the interior point x0 (the result is K with gauge and
/// radii taken about x0, and support shifted accordingly).  The gauge falls
/// back to a ray bisection against the original membership test, so it is
/// exact but not cheap.
Body translate(const Body& body, const Vector& x0);

/// Intersection of two bodies sharing the same anchor: gauge is the max of
/// the gauges; the support function is dropped (no closed form).
Body intersect(const Body& b1, const Body& b2);

/// Dilation by t > 0 about the anchor.
Body scale(const Body& body, Real t);

}  // namespace santalo
