#include "santalo/bodies.hpp"

#include "santalo/rng.hpp"
#include "santalo/volmc.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace santalo;

namespace {

Vector random_vector(RandomStream& s, int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = s.next_normal();
    return v;
}

Vector unit(std::initializer_list<Real> coords) {
    Vector v(static_cast<Index>(coords.size()));
    Index i = 0;
    for (Real c : coords) v[i++] = c;
    return v;
}

}  // namespace

TEST_CASE("gauge positive homogeneity on random probes") {
    RandomStream s(11, 0);
    for (const Body& b : {make_lp_ball(2.0, 4), make_lp_ball(1.0, 3, 2.0),
                          make_lp_ball(LpExponent::infinity(), 5, 0.5), make_half_ball(3),
                          shifted_ball_polar_ellipsoid(0.4, 4)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const Vector x = random_vector(s, b.dim);
            const Real t = 0.1 + 3.0 * s.next_uniform();
            CHECK(b.gauge(t * x) == doctest::Approx(t * b.gauge(x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("membership and radius consistency") {
    RandomStream s(12, 0);
    for (const Body& b : {make_lp_ball(2.0, 3), make_lp_ball(1.0, 4), make_half_ball(2),
                          shifted_ball_polar_ellipsoid(0.3, 3)}) {
        for (int trial = 0; trial < 200; ++trial) {
            const Vector z = random_vector(s, b.dim);
            const Real g = b.gauge(z);
            CHECK(g * b.in_radius <= z.norm() * (1 + 1e-12));
            CHECK(z.norm() <= g * b.out_radius * (1 + 1e-12));
            CHECK(b.contains(b.anchor + z / (g * 1.0000001)));
            CHECK(!b.contains(b.anchor + z * (1.0000001 / g) * 1.01));
        }
    }
}

TEST_CASE("support dominates boundary points and duality holds at the witness") {
    RandomStream s(13, 0);
    for (const Body& b : {make_lp_ball(2.0, 3), make_lp_ball(1.0, 3), make_lp_ball(1.0, 2, 2.0),
                          make_lp_ball(LpExponent::infinity(), 4, 0.5),
                          shifted_ball_polar_ellipsoid(0.5, 3)}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Vector z = random_vector(s, b.dim);
            const Vector u = random_vector(s, b.dim);
            const Real g = b.gauge(z);
            // centered support h_{K - anchor}(u) = h_K(u) - <anchor, u>
            const Real hu = b.support(u) - b.anchor.dot(u);
            CHECK(u.dot(z) / g <= hu * (1 + 1e-9) + 1e-12);
        }
    }
    // duality gauge(z) = max_u <u,z>/h(u): closed-form witness per body
    Body ball = make_lp_ball(2.0, 3);
    Body cross = make_lp_ball(1.0, 3);
    Body cube = make_lp_ball(LpExponent::infinity(), 3);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector z = random_vector(s, 3);
        CHECK(z.dot(z / z.norm()) / ball.support(z / z.norm()) ==
              doctest::Approx(ball.gauge(z)).epsilon(1e-9));
        // witness for the cross-polytope gauge |z|_1: the sign pattern
        Vector sg = z.array().sign();
        CHECK(z.dot(sg) / cross.support(sg) == doctest::Approx(cross.gauge(z)).epsilon(1e-9));
        // witness for the cube gauge |z|_inf: the largest coordinate
        Index k;
        z.cwiseAbs().maxCoeff(&k);
        Vector u = Vector::Zero(3);
        u[k] = z[k] > 0 ? 1.0 : -1.0;
        CHECK(z.dot(u) / cube.support(u) == doctest::Approx(cube.gauge(z)).epsilon(1e-9));
    }
    // ellipsoid witness: u = A z in the centered frame
    Body ell = shifted_ball_polar_ellipsoid(0.5, 3);
    const Real one_m = 1.0 - 0.25;
    for (int trial = 0; trial < 50; ++trial) {
        const Vector z = random_vector(s, 3);
        Vector u = z;
        u[0] *= one_m * one_m;
        u[1] *= one_m;
        u[2] *= one_m;
        const Real h_centered = ell.support(u) - ell.anchor.dot(u);
        CHECK(z.dot(u) / h_centered == doctest::Approx(ell.gauge(z)).epsilon(1e-9));
    }
}

TEST_CASE("lp ball anchors and scales") {
    CHECK(make_lp_ball(2.0, 3).gauge(unit({1, 0, 0})) == doctest::Approx(1.0));
    CHECK(make_lp_ball(1.0, 2, 2.0).gauge(unit({1, 1})) == doctest::Approx(1.0));
    CHECK(make_lp_ball(LpExponent::infinity(), 4, 0.5).support(unit({1, 0, 0, 0})) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(make_lp_ball(0.5, 3), std::domain_error);
}

TEST_CASE("polar sections of the hull body") {
    HullBodyParams params{2, 1.0, 1.0 / (std::numbers::e - 1.0)};
    const SectionBody mid = polar_section(params, 0.0);
    CHECK(mid.r2 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    CHECK(mid.r1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(!mid.degenerate());

    const SectionBody bottom = polar_section(params, -1.0 / params.a);
    CHECK(bottom.r2 == doctest::Approx(0.0));
    CHECK(bottom.degenerate());

    const SectionBody top = polar_section(params, 1.0 / params.b);
    CHECK(top.r1 == doctest::Approx(0.0));
    CHECK(top.degenerate());

    CHECK_THROWS_AS(polar_section(params, 1.0 / params.b + 0.01), std::domain_error);
    CHECK_THROWS_AS(polar_section(params, -1.0 / params.a - 0.01), std::domain_error);

    // degenerate sections get volume zero from the grid estimator
    CHECK(grid_volume(bottom.to_body(), 128).log_value.is_zero());
}

TEST_CASE("half ball support values") {
    Body b = make_half_ball(4);
    CHECK(b.support(unit({1, 0, 0, 0})) == doctest::Approx(1.0));
    CHECK(b.support(unit({-1, 0, 0, 0})) == doctest::Approx(0.0));
    const Real r = std::sqrt(0.5);
    CHECK(b.support(unit({-r, r, 0, 0})) == doctest::Approx(r).epsilon(1e-12));
    CHECK(b.symmetry_axis == 0);
    CHECK(!b.origin_symmetric);
    // anchor is interior with the documented default
    CHECK(b.anchor[0] == doctest::Approx(0.25));
    CHECK(b.gauge(unit({0.74, 0, 0, 0})) < 1.0);
}

TEST_CASE("polar ellipsoid of the shifted ball") {
    CHECK_THROWS_AS(shifted_ball_polar_ellipsoid(1.0, 3), std::domain_error);
    CHECK_THROWS_AS(shifted_ball_polar_ellipsoid(-0.1, 3), std::domain_error);

    // lambda = 0 is the unit ball
    Body unit_ball = shifted_ball_polar_ellipsoid(0.0, 3);
    RandomStream s(21, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector z = random_vector(s, 3);
        CHECK(unit_ball.gauge(z) == doctest::Approx(z.norm()).epsilon(1e-12));
    }

    Body e = shifted_ball_polar_ellipsoid(0.5, 2);
    CHECK(e.anchor[0] == doctest::Approx(-0.5 / 0.75).epsilon(1e-12));  // center -2/3
    // boundary point on the long axis
    CHECK(e.gauge(unit({1.0 / 0.75, 0})) == doctest::Approx(1.0).epsilon(1e-12));
    // volume: (1 - l^2)^{-3/2} * pi, checked against the grid
    const VolumeEstimate v = grid_volume(e, 2000);
    const Real expected = std::pow(0.75, -1.5) * std::numbers::pi;
    CHECK(std::exp(v.log_value.log_magnitude) == doctest::Approx(expected).epsilon(0.002));
}

TEST_CASE("shifted ball polar volume identity in logs") {
    for (int n : {2, 3, 5}) {
        for (Real lambda : {0.2, 0.5, 0.8}) {
            Body e = shifted_ball_polar_ellipsoid(lambda, n);
            const Real expected = -0.5 * (n + 1) * std::log1p(-lambda * lambda) +
                                  lp_ball_log_volume(2.0, n).log_magnitude;
            // product of the semiaxes: (1-l^2)^{-1} * (1-l^2)^{-(n-1)/2}
            const Real axes = -std::log1p(-lambda * lambda) -
                              0.5 * (n - 1) * std::log1p(-lambda * lambda) +
                              lp_ball_log_volume(2.0, n).log_magnitude;
            CHECK(axes == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("translate, intersect, scale") {
    Body ball = make_lp_ball(2.0, 2);
    Body big = scale(ball, 2.0);
    CHECK(big.gauge(unit({2, 0})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(big.support(unit({0, 1})) == doctest::Approx(2.0).epsilon(1e-12));

    Body both = intersect(ball, big);
    RandomStream s(31, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector z = random_vector(s, 2);
        CHECK(both.gauge(z) == doctest::Approx(ball.gauge(z)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(intersect(ball, make_lp_ball(2.0, 3)), std::invalid_argument);

    // translated half ball: points marching toward the flat face stay inside
    // with gauge -> 1, and the ray beyond is unbounded in gauge
    Body hb = make_half_ball(2);
    const Real lambda = 0.3;
    Body shifted = translate(hb, unit({lambda, 0}));
    CHECK(shifted.gauge(unit({-lambda * 0.5, 0})) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(shifted.gauge(unit({-lambda * 0.999, 0})) == doctest::Approx(0.999).epsilon(1e-6));
    CHECK(shifted.gauge(unit({-lambda * 50.0, 0})) == doctest::Approx(50.0).epsilon(1e-6));
    // support shift: h_{K - x0}(u) = h_K(u) - <x0, u>
    CHECK(shifted.support(unit({1, 0})) == doctest::Approx(1.0 - lambda).epsilon(1e-12));
    CHECK_THROWS_AS(translate(hb, unit({2.0, 0})), std::domain_error);

    // shifted Euclidean ball keeps its axis symmetry and exact support
    Body moved = translate(make_lp_ball(2.0, 3), unit({-0.4, 0, 0}));
    CHECK(moved.symmetry_axis == 0);
    CHECK(moved.support(unit({1, 0, 0})) == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(moved.gauge(unit({1.4, 0, 0})) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("section volumes respect the product envelope (n = 2 grid check)") {
    HullBodyParams params{2, 1.0, 1.0 / (std::numbers::e - 1.0)};
    for (Real s : {-0.6, -0.3, 0.0, 0.4, 1.0}) {
        const SectionBody sec = polar_section(params, s);
        const VolumeEstimate v = grid_volume(sec.to_body(), 1200);
        const Real env = std::min(
            2 * std::numbers::ln2 + 2 * std::log1p(-s * params.b) +
                lp_ball_log_volume(1.0, 2).log_magnitude,
            2 * std::log1p(s * params.a) + 2 * lp_ball_log_volume(2.0, 2).log_magnitude);
        CHECK(v.log_value.log_magnitude <= env + 3 * v.std_err_log + 1e-9);
    }
}

TEST_CASE("polar of the shifted half ball sits between ellipsoid and ellipsoid-plus-cone") {
    // The polar of (half ball - lambda e_1) is the x_1 >= 0 part of the
    // reflected ellipsoid plus the cone toward -e_1/lambda.  Membership:
    // y in polar  iff  h_B(y) - lambda y_1 <= 1.
    RandomStream s(41, 0);
    for (int n : {2, 3}) {
        Body hb = make_half_ball(n);
        for (Real lambda : {0.3, 0.5}) {
            Body ell = shifted_ball_polar_ellipsoid(lambda, n);
            Vector x0 = Vector::Zero(n);
            x0[0] = lambda;
            auto in_polar = [&](const Vector& y) {
                return hb.support(y) - lambda * y[0] <= 1.0 + 1e-12;
            };
            const Real apex = -1.0 / lambda;
            auto in_cone = [&](const Vector& y) {
                if (y[0] > 0 || y[0] < apex) return false;
                const Real frac = 1.0 + lambda * y[0];  // base radius 1 at y_1 = 0
                return (y.squaredNorm() - y[0] * y[0]) <= frac * frac + 1e-12;
            };
            int polar_hits = 0;
            for (int trial = 0; trial < 4000; ++trial) {
                // points of the reflected ellipsoid: reflect a sample of the
                // constructor's ellipsoid in the first coordinate
                Vector z = random_vector(s, n);
                z *= std::pow(s.next_uniform(), 1.0 / n) / ell.gauge(z);
                Vector y = ell.anchor + z;
                y[0] = -y[0];
                CHECK(in_polar(y));
                // polar points: rejection-sample a box around the polar
                Vector w(n);
                w[0] = apex + (1.0 / (1.0 - lambda) - apex) * s.next_uniform();
                for (int j = 1; j < n; ++j) w[j] = -2.0 + 4.0 * s.next_uniform();
                if (in_polar(w)) {
                    ++polar_hits;
                    Vector wr = w;
                    wr[0] = -wr[0];
                    const bool in_ellipsoid = ell.gauge(wr - ell.anchor) <= 1.0 + 1e-9;
                    CHECK((in_ellipsoid || in_cone(w)));
                }
            }
            CHECK(polar_hits > 100);  // the rejection sampler actually hit the polar
        }
    }
}
