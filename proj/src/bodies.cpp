#include "santalo/bodies.hpp"

#include <numbers>

namespace santalo {

namespace {

Vector axis_vector(int dim, int axis, Real value) {
    Vector v = Vector::Zero(dim);
    v[axis] = value;
    return v;
}

}  // namespace

Body SectionBody::to_body() const {
    Body b;
    b.dim = n;
    b.anchor = Vector::Zero(n);
    SectionBody self = *this;
    b.gauge = [self](const Vector& x) { return self.gauge(x); };
    // support of an intersection has no closed form; gauge only
    if (degenerate()) {
        b.in_radius = 0;
        b.out_radius = 0;
    } else {
        b.in_radius = std::min(r2, r1 / std::sqrt(static_cast<Real>(n)));
        b.out_radius = std::min(r2, r1);
    }
    b.origin_symmetric = true;
    return b;
}

Body make_lp_ball(LpExponent p, int n, Real scale) {
    if (n < 1) throw std::domain_error("make_lp_ball: n must be >= 1");
    if (!(scale > 0)) throw std::domain_error("make_lp_ball: scale must be positive");
    Body b;
    b.dim = n;
    b.anchor = Vector::Zero(n);
    const LpExponent q = p.dual();
    b.gauge = [p, scale](const Vector& x) { return lp_norm(x, p) / scale; };
    b.support = [q, scale](const Vector& u) { return scale * lp_norm(u, q); };
    // B_p^n sits between balls of radius min(1, n^{1/2-1/p}) and max of the same.
    const Real ratio =
        p.is_infinite() ? std::sqrt(static_cast<Real>(n))
                        : std::pow(static_cast<Real>(n), 0.5 - 1.0 / p.value());
    b.in_radius = scale * std::min(1.0, ratio);
    b.out_radius = scale * std::max(1.0, ratio);
    b.origin_symmetric = true;
    const bool rotational = (!p.is_infinite() && p.value() == 2.0) || n == 1;
    b.symmetry_axis = rotational ? 0 : -1;
    return b;
}

SectionBody polar_section(const HullBodyParams& params, Real s) {
    if (params.n < 1 || !(params.a > 0) || !(params.b > 0))
        throw std::domain_error("polar_section: invalid hull parameters");
    const Real lo = -1.0 / params.a, hi = 1.0 / params.b;
    if (!(s >= lo && s <= hi))
        throw std::domain_error("polar_section: height outside [-1/a, 1/b] (empty section)");
    SectionBody sec;
    sec.n = params.n;
    const Real root = std::exp(lp_ball_log_volume(LpExponent(2.0), params.n).log_magnitude /
                               params.n);
    sec.r2 = std::max(0.0, (1.0 + s * params.a) * root);
    sec.r1 = std::max(0.0, 2.0 * (1.0 - s * params.b));
    return sec;
}

Body make_half_ball(int n) {
    if (n < 1) throw std::domain_error("make_half_ball: n must be >= 1");
    Body b;
    b.dim = n;
    b.anchor = axis_vector(n, 0, 0.25);
    const Vector anchor = b.anchor;
    // Ray from the anchor exits through either the flat face x_1 = 0 or the
    // spherical cap; the gauge is 1 over the nearer exit parameter.
    b.gauge = [anchor, n](const Vector& z) {
        if (z.isZero(0)) return 0.0;
        const Real cz = anchor.dot(z);
        const Real zz = z.squaredNorm();
        const Real c2 = anchor.squaredNorm();
        Real rho_sphere =
            (-cz + std::sqrt(cz * cz + zz * (1.0 - c2))) / zz;
        Real rho = rho_sphere;
        if (z[0] < 0) rho = std::min(rho, anchor[0] / (-z[0]));
        return 1.0 / rho;
    };
    b.support = [n](const Vector& u) {
        if (u[0] >= 0) return u.norm();
        return n == 1 ? 0.0 : std::sqrt(u.squaredNorm() - u[0] * u[0]);
    };
    b.in_radius = 0.25;
    b.out_radius = std::sqrt(1.0 + 0.0625);
    b.origin_symmetric = false;
    b.symmetry_axis = 0;
    return b;
}

Body shifted_ball_polar_ellipsoid(Real lambda, int n) {
    if (!(lambda >= 0) || lambda >= 1)
        throw std::domain_error("shifted_ball_polar_ellipsoid: lambda must be in [0, 1)");
    if (n < 1) throw std::domain_error("shifted_ball_polar_ellipsoid: n must be >= 1");
    const Real one_m = 1.0 - lambda * lambda;
    Body b;
    b.dim = n;
    b.anchor = axis_vector(n, 0, -lambda / one_m);
    const Vector center = b.anchor;
    // centered quadratic form: (1-l^2)^2 z_1^2 + (1-l^2) |z'|^2
    b.gauge = [one_m](const Vector& z) {
        const Real tail2 = z.squaredNorm() - z[0] * z[0];
        return std::sqrt(one_m * one_m * z[0] * z[0] + one_m * tail2);
    };
    b.support = [one_m, center](const Vector& u) {
        const Real tail2 = u.squaredNorm() - u[0] * u[0];
        return center.dot(u) + std::sqrt(u[0] * u[0] / (one_m * one_m) + tail2 / one_m);
    };
    b.in_radius = 1.0 / std::sqrt(one_m);
    b.out_radius = 1.0 / one_m;
    b.origin_symmetric = (lambda == 0.0);
    b.symmetry_axis = 0;
    return b;
}

Body translate(const Body& body, const Vector& x0) {
    if (x0.size() != body.dim) throw std::invalid_argument("translate: dimension mismatch");
    if (!body.contains(x0))
        throw std::domain_error("translate: new anchor must be interior to the body");
    Body out;
    out.dim = body.dim;
    out.anchor = Vector::Zero(body.dim);
    const Real shift = (x0 - body.anchor).norm();
    Body base = body;
    const Real reach = body.out_radius + shift;  // exit parameter never exceeds this / |z|
    out.gauge = [base, x0, reach](const Vector& z) {
        if (z.isZero(0)) return 0.0;
        const Real zn = z.norm();
        Real hi = reach / zn * 2.0 + 1.0;
        Real lo = 0.0;
        // expand until outside, then bisect the boundary crossing
        while (base.contains(x0 + hi * z)) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e12) return 0.0;  // unbounded ray (not expected for convex bodies here)
        }
        for (int i = 0; i < 80; ++i) {
            const Real mid = 0.5 * (lo + hi);
            (base.contains(x0 + mid * z) ? lo : hi) = mid;
        }
        return 2.0 / (lo + hi);
    };
    if (body.has_support()) {
        Body src = body;
        out.support = [src, x0](const Vector& u) { return src.support(u) - x0.dot(u); };
    }
    out.in_radius = std::max(0.0, body.in_radius - shift);
    out.out_radius = body.out_radius + shift;
    out.origin_symmetric = body.origin_symmetric && x0.isZero(0);
    const bool on_axis =
        body.symmetry_axis >= 0 &&
        (x0 - axis_vector(body.dim, body.symmetry_axis, x0[body.symmetry_axis])).isZero(0);
    out.symmetry_axis = on_axis ? body.symmetry_axis : -1;
    return out;
}

Body intersect(const Body& b1, const Body& b2) {
    if (b1.dim != b2.dim) throw std::invalid_argument("intersect: dimension mismatch");
    if ((b1.anchor - b2.anchor).norm() != 0.0)
        throw std::invalid_argument("intersect: bodies must share the same anchor");
    Body out;
    out.dim = b1.dim;
    out.anchor = b1.anchor;
    auto g1 = b1.gauge, g2 = b2.gauge;
    out.gauge = [g1, g2](const Vector& z) { return std::max(g1(z), g2(z)); };
    out.in_radius = std::min(b1.in_radius, b2.in_radius);
    out.out_radius = std::min(b1.out_radius, b2.out_radius);
    out.origin_symmetric = b1.origin_symmetric && b2.origin_symmetric;
    out.symmetry_axis =
        (b1.symmetry_axis >= 0 && b1.symmetry_axis == b2.symmetry_axis) ? b1.symmetry_axis : -1;
    return out;
}

Body scale(const Body& body, Real t) {
    if (!(t > 0)) throw std::domain_error("scale: factor must be positive");
    Body out = body;
    auto g = body.gauge;
    out.gauge = [g, t](const Vector& z) { return g(z / t); };
    if (body.has_support()) {
        auto h = body.support;
        const Vector anchor = body.anchor;
        out.support = [h, t, anchor](const Vector& u) {
            return t * (h(u) - anchor.dot(u)) + anchor.dot(u);
        };
    }
    out.in_radius = body.in_radius * t;
    out.out_radius = body.out_radius * t;
    return out;
}

}  // namespace santalo
