#include "santalo/volmc.hpp"

#include "santalo/bodies.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace santalo;

namespace {

struct Moments {
    Real m1 = 0, m2 = 0;
};

Moments abs_moments(const std::vector<Real>& xs) {
    Moments m;
    for (Real x : xs) {
        m.m1 += std::abs(x);
        m.m2 += x * x;
    }
    m.m1 /= static_cast<Real>(xs.size());
    m.m2 /= static_cast<Real>(xs.size());
    return m;
}

}  // namespace

TEST_CASE("p-Gaussian sampler moments match the Gamma-ratio formula") {
    RandomStream stream(20240001, 0);
    const long N = 1000000;

    RandomStream s1 = stream.substream(1);
    const auto h1 = sample_pgauss(1.0, N, s1);
    const Moments m1 = abs_moments(h1);
    // E|h| = 1, Var|h| = 1; E h^2 = 2, Var h^2 = 20
    CHECK(std::abs(m1.m1 - 1.0) < 3.0 * std::sqrt(1.0 / N));
    CHECK(std::abs(m1.m2 - 2.0) < 3.0 * std::sqrt(20.0 / N));

    RandomStream s2 = stream.substream(2);
    const auto h2 = sample_pgauss(2.0, N, s2);
    const Moments m2 = abs_moments(h2);
    // density ~ e^{-t^2}: E h^2 = 1/2, Var h^2 = 3/4 - 1/4 = 1/2
    CHECK(std::abs(m2.m2 - 0.5) < 3.0 * std::sqrt(0.5 / N));

    RandomStream s3 = stream.substream(3);
    const auto h3 = sample_pgauss(3.0, N, s3);
    const Moments m3 = abs_moments(h3);
    CHECK(std::abs(m3.m1 - pq_moment(3.0, 1.0)) < 4.0 / std::sqrt(static_cast<Real>(N)));
    CHECK(std::abs(m3.m2 - pq_moment(3.0, 2.0)) < 4.0 / std::sqrt(static_cast<Real>(N)));

    RandomStream s4 = stream.substream(4);
    const auto g = sample_standard_normal(N, s4);
    const Moments mg = abs_moments(g);
    CHECK(std::abs(mg.m2 - 1.0) < 3.0 * std::sqrt(2.0 / N));

    CHECK_THROWS_AS(sample_pgauss(0.7, 10, stream), std::domain_error);
}

TEST_CASE("pq_moment anchors") {
    CHECK(pq_moment(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pq_moment(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pq_moment(2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // E|h^2|^2 = Gamma(3/2)/Gamma(1/2) = 1/2
    CHECK(pq_moment(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ratio CDF saturates and locates the Gaussian concentration point") {
    const RandomStream stream(77, 0);
    // q >= p makes the ratio at most 1
    CHECK(ratio_cdf(1.0, 2.0, 8, 1.01, 2000, stream).value == doctest::Approx(1.0));
    CHECK(ratio_cdf(2.0, 3.0, 8, 1.01, 2000, stream).value == doctest::Approx(1.0));
    // q < p: the l1/l2 ratio of 200 normals concentrates near sqrt(2/pi) sqrt(n)
    const int n = 200;
    const Real root_n = std::sqrt(static_cast<Real>(n));
    const Real c = std::sqrt(2.0 / std::numbers::pi);
    const ProbEstimate below =
        ratio_cdf(2.0, 1.0, n, (c - 0.05) * root_n, 20000, stream.substream(1));
    const ProbEstimate above =
        ratio_cdf(2.0, 1.0, n, (c + 0.05) * root_n, 20000, stream.substream(2));
    CHECK(below.value < 0.5);
    CHECK(above.value >= 0.5);
}

TEST_CASE("intersection volume anchors in the plane") {
    const RandomStream stream(123, 0);
    const long N = 400000;
    // B_1^2 inside B_2^2: the intersection at s = 1 is the cross-polytope
    const VolumeEstimate v1 = intersect_volume(2.0, 1.0, 2, 1.0, N, stream.substream(1));
    CHECK(std::exp(v1.log_value.log_magnitude) ==
          doctest::Approx(2.0).epsilon(3.0 * v1.std_err_log + 1e-4));
    // B_2^2 inside sqrt(2) B_1^2: the intersection is the full disk
    const VolumeEstimate v2 =
        intersect_volume(2.0, 1.0, 2, std::numbers::sqrt2, N, stream.substream(2));
    CHECK(std::exp(v2.log_value.log_magnitude) ==
          doctest::Approx(std::numbers::pi).epsilon(3.0 * v2.std_err_log + 1e-4));
    CHECK_THROWS_AS(intersect_volume(2.0, 1.0, 2, -0.5, 100, stream), std::domain_error);
}

TEST_CASE("intersection volume matches the grid oracle through the transition") {
    const RandomStream stream(321, 0);
    const long N = 200000;
    int idx = 0;
    for (int n : {2, 3}) {
        const int res = n == 2 ? 2400 : 240;
        const struct {
            Real p, q;
            std::vector<Real> ss;
        } cases[] = {
            {2.0, 1.0, n == 2 ? std::vector<Real>{0.8, 1.0, 1.1, 1.2, std::numbers::sqrt2}
                              : std::vector<Real>{1.0, 1.2, 1.4, 1.6, std::sqrt(3.0)}},
            {1.0, 2.0, n == 2 ? std::vector<Real>{0.6, 0.71, 0.8, 0.9, 1.0}
                              : std::vector<Real>{0.5, 0.65, 0.8, 0.9, 1.05}},
        };
        for (const auto& c : cases) {
            for (Real s : c.ss) {
                const VolumeEstimate mc =
                    intersect_volume(c.p, c.q, n, s, N, stream.substream(idx++));
                const Body body =
                    intersect(make_lp_ball(c.p, n), make_lp_ball(c.q, n, s));
                const VolumeEstimate grid = grid_volume(body, res);
                const Real v_mc = std::exp(mc.log_value.log_magnitude);
                const Real v_grid = std::exp(grid.log_value.log_magnitude);
                const Real sigma = std::hypot(v_mc * mc.std_err_log, v_grid * grid.std_err_log);
                INFO("p=", c.p, " q=", c.q, " n=", n, " s=", s);
                CHECK(std::abs(v_mc - v_grid) <= 3.0 * sigma + 1e-6);
            }
        }
    }
}

TEST_CASE("self-pair intersections reduce to nesting") {
    // B_p cap s B_p = min(1, s) B_p exactly
    const RandomStream stream(777, 3);
    int k = 0;
    for (Real p : {1.0, 2.0}) {
        for (int n : {2, 3}) {
            for (Real s : {0.7, 1.3}) {
                const VolumeEstimate v =
                    intersect_volume(p, p, n, s, 200000, stream.substream(k++));
                const Real expected = n * std::log(std::min(1.0, s)) +
                                      lp_ball_log_volume(p, n).log_magnitude;
                CHECK(std::abs(v.log_value.log_magnitude - expected) <=
                      3.0 * v.std_err_log + 1e-10);
            }
        }
    }
}

TEST_CASE("intersection volume is monotone in s and respects both factor bounds") {
    const RandomStream stream(555, 0);
    const long N = 60000;
    for (int n : {2, 8}) {
        Real prev = -std::numeric_limits<Real>::infinity();
        int k = 0;
        for (Real s : {0.3, 0.6, 0.9, 1.2, 1.5}) {
            const VolumeEstimate v = intersect_volume(2.0, 1.0, n, s, N, stream.substream(k++));
            const Real lv = v.log_value.log_magnitude;
            CHECK(lv >= prev - 3.0 * v.std_err_log - 0.05);
            prev = lv;
            const Real bound = std::min(lp_ball_log_volume(2.0, n).log_magnitude,
                                        n * std::log(s) + lp_ball_log_volume(1.0, n).log_magnitude);
            CHECK(lv <= bound + 3.0 * v.std_err_log + 1e-9);
        }
    }
}

TEST_CASE("grid volume oracle anchors") {
    CHECK(std::exp(grid_volume(make_lp_ball(2.0, 2), 4000).log_value.log_magnitude) ==
          doctest::Approx(std::numbers::pi).epsilon(0.002));
    CHECK(std::exp(grid_volume(make_lp_ball(1.0, 2), 4000).log_value.log_magnitude) ==
          doctest::Approx(2.0).epsilon(0.002));
    CHECK(std::exp(grid_volume(make_half_ball(2), 4000).log_value.log_magnitude) ==
          doctest::Approx(0.5 * std::numbers::pi).epsilon(0.002));
    CHECK(std::exp(grid_volume(make_lp_ball(2.0, 1), 1000).log_value.log_magnitude) ==
          doctest::Approx(2.0).epsilon(0.01));
    CHECK_THROWS_AS(grid_volume(make_lp_ball(2.0, 4), 500), std::invalid_argument);
    CHECK_THROWS_AS(grid_volume(make_lp_ball(2.0, 2), 50), std::domain_error);
}

TEST_CASE("threshold formulas") {
    // the cross-in-ball threshold tends to sqrt(pi/e)
    const Real limit = std::sqrt(std::numbers::pi / std::numbers::e);
    CHECK(threshold_cross_in_ball(2000, 1e-9) == doctest::Approx(limit).epsilon(0.02));
    // monotone in gamma, finite at small n
    CHECK(threshold_ball_in_cross(2, 0.2) > threshold_ball_in_cross(2, 0.1));
    CHECK(threshold_cross_in_ball(2, 0.2) > threshold_cross_in_ball(2, 0.1));
    CHECK(threshold_ball_in_cross(2, 0.1) > 0);
    CHECK(std::isfinite(threshold_ball_in_cross(2, 0.1)));
}

TEST_CASE("normalized half test saturates and clears one half above threshold") {
    const RandomStream stream(888, 0);
    CHECK(half_test(HalfTestKind::ball_in_cross, 50, 100.0, 5000, stream).value ==
          doctest::Approx(1.0));
    CHECK(half_test(HalfTestKind::cross_in_ball, 50, 100.0, 5000, stream).value ==
          doctest::Approx(1.0));
    CHECK(half_test(HalfTestKind::ball_in_cross, 50, 0.0, 100, stream).value == 0.0);

    const int n = 200;
    const long N = 40000;
    const Real gamma = 0.05;
    const ProbEstimate bic = half_test(HalfTestKind::ball_in_cross, n,
                                       1.05 * threshold_ball_in_cross(n, gamma), N,
                                       stream.substream(1));
    CHECK(bic.value >= 0.5 - 3.0 * bic.std_err);
    const ProbEstimate cib = half_test(HalfTestKind::cross_in_ball, n,
                                       1.05 * threshold_cross_in_ball(n, gamma), N,
                                       stream.substream(2));
    CHECK(cib.value >= 0.5 - 3.0 * cib.std_err);
}

TEST_CASE("norm-ratio concentration of coordinate samples") {
    // Empirical probability that the normalized l1/l2 ratio of n normals sits
    // within gamma of sqrt(2/pi) must reach one half; n = 200 suffices for
    // the Gaussian case.  The two-sided exponential needs a larger n for the
    // same gamma (Var(h^2) = 20), so that check runs at n = 1000.
    RandomStream stream(999, 0);
    const Real gamma = 0.05;
    const int reps = 1500;

    int hits_gauss = 0;
    const Real c_gauss = std::sqrt(2.0 / std::numbers::pi);
    RandomStream sg = stream.substream(1);
    for (int r = 0; r < reps; ++r) {
        const auto g = sample_standard_normal(200, sg);
        const Moments m = abs_moments(g);
        if (std::abs(m.m1 / std::sqrt(m.m2) - c_gauss) <= gamma) ++hits_gauss;
    }
    CHECK(hits_gauss >= reps / 2);

    int hits_exp = 0;
    RandomStream se = stream.substream(2);
    for (int r = 0; r < reps; ++r) {
        const auto h = sample_pgauss(1.0, 1000, se);
        const Moments m = abs_moments(h);
        const Real ratio = std::sqrt(m.m2) / m.m1;
        if (ratio >= std::numbers::sqrt2 - gamma && ratio <= std::numbers::sqrt2 + gamma)
            ++hits_exp;
    }
    CHECK(hits_exp >= reps / 2);
}

TEST_CASE("reported standard error shrinks like one over root two when samples double") {
    const RandomStream stream(1234, 0);
    Real ratio_sum = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const ProbEstimate a =
            intersect_fraction(2.0, 1.0, 4, 1.0, 20000, stream.substream(2 * rep));
        const ProbEstimate b =
            intersect_fraction(2.0, 1.0, 4, 1.0, 40000, stream.substream(2 * rep + 1));
        ratio_sum += a.std_err / b.std_err;
    }
    const Real avg = ratio_sum / 10.0;
    CHECK(avg > std::numbers::sqrt2 * 0.8);
    CHECK(avg < std::numbers::sqrt2 * 1.2);
}

TEST_CASE("stratified radial sampling agrees with the plain estimator") {
    const RandomStream stream(4321, 0);
    McOptions plain, strat;
    strat.stratified = true;
    const ProbEstimate a = intersect_fraction(2.0, 1.0, 3, 1.3, 100000, stream, plain);
    const ProbEstimate b = intersect_fraction(2.0, 1.0, 3, 1.3, 100000, stream, strat);
    CHECK(std::abs(a.value - b.value) <= 4.0 * std::hypot(a.std_err, b.std_err));
}

TEST_CASE("estimates are bit-identical across worker counts") {
    const RandomStream stream(20240001, 9);
    setenv("SANTALO_LAB_THREADS", "1", 1);
    const ProbEstimate one = intersect_fraction(2.0, 1.0, 6, 1.1, 100000, stream);
    const VolumeEstimate vol_one = intersect_volume(1.0, 2.0, 5, 0.9, 50000, stream);
    setenv("SANTALO_LAB_THREADS", "7", 1);
    const ProbEstimate many = intersect_fraction(2.0, 1.0, 6, 1.1, 100000, stream);
    const VolumeEstimate vol_many = intersect_volume(1.0, 2.0, 5, 0.9, 50000, stream);
    unsetenv("SANTALO_LAB_THREADS");
    CHECK(one.value == many.value);
    CHECK(one.std_err == many.std_err);
    CHECK(vol_one.log_value.log_magnitude == vol_many.log_value.log_magnitude);
    CHECK(vol_one.std_err_log == vol_many.std_err_log);
}
