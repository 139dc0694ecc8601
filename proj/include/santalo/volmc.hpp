#pragma once

#include "santalo/bodies.hpp"
#include "santalo/rng.hpp"
#include "santalo/types.hpp"

#include <vector>

namespace santalo {

/// i.i.d. draws with the p-generalized Gaussian density
/// p / (2 Gamma(1/p)) e^{-|t|^p}, p >= 1.  Sampled rejection-free as a signed
/// Gamma(1/p)^{1/p} (exponential for p = 1, scaled normal for p = 2).
std::vector<Real> sample_pgauss(Real p, long count, RandomStream& stream);

/// Standard N(0,1) draws (the variance-1 variant of the p = 2 case).
std::vector<Real> sample_standard_normal(long count, RandomStream& stream);

/// E|h^p|^q = Gamma((q+1)/p) / Gamma(1/p) for the density above.
Real pq_moment(Real p, Real q);

struct McOptions {
    long block_size = 16384;  // samples per substream block
    bool stratified = false;  // stratify the radial variable of intersect estimators
};

/// Empirical P( |h|_q / |h|_p <= u ) over `samples` p-Gaussian vectors of
/// dimension n, with a Wilson-interval standard error.
ProbEstimate ratio_cdf(Real p, Real q, int n, Real u, long samples, const RandomStream& stream,
                       const McOptions& opts = {});

/// Normalized intersection fraction vol(B_p^n cap t B_q^n) / vol(B_p^n),
/// estimated in a single pass: draw h p-Gaussian and R = U^{1/n}, average the
/// indicator of |h|_q / |h|_p <= t / R.
ProbEstimate intersect_fraction(Real p, Real q, int n, Real t, long samples,
                                const RandomStream& stream, const McOptions& opts = {});

/// vol(B_p^n cap s B_q^n) in log space (the fraction above times vol(B_p^n)).
VolumeEstimate intersect_volume(Real p, Real q, int n, Real s, long samples,
                                const RandomStream& stream, const McOptions& opts = {});

/// Deterministic midpoint rasterization over [-out_radius, out_radius]^dim
/// about the body's anchor; dim <= 3, resolution >= 100.  The reported
/// std_err_log is a boundary-cell heuristic, not a rigorous bound.
VolumeEstimate grid_volume(const Body& body, int resolution);

/// Scale thresholds above which the normalized intersections are at least
/// one half (for large n):
///   ball-in-cross:  t >= (sqrt(2/pi) + gamma) sqrt(n) vol(B_1)^{1/n} / vol(B_2)^{1/n}
///   cross-in-ball:  s >= ((sqrt(2) + gamma) / sqrt(n)) vol(B_2)^{1/n} / vol(B_1)^{1/n}
Real threshold_ball_in_cross(int n, Real gamma);
Real threshold_cross_in_ball(int n, Real gamma);

enum class HalfTestKind { ball_in_cross, cross_in_ball };

/// Volume of the intersection of the two volume-normalized bodies
/// (B_2 / vol^{1/n} and B_1 / vol^{1/n}), one scaled by `scale`; a number in
/// [0, 1].  Used to check the one-half lower bounds above threshold.
ProbEstimate half_test(HalfTestKind kind, int n, Real scale, long samples,
                       const RandomStream& stream, const McOptions& opts = {});

}  // namespace santalo
