#pragma once

#include "santalo/bodies.hpp"
#include "santalo/rng.hpp"
#include "santalo/types.hpp"

namespace santalo {

/// vol((K - x)^circ) for an interior point x of a body with a support
/// evaluator, via the spherical representation
///   vol = vol(B_2^n) E_theta[ h_{K-x}(theta)^{-n} ],  theta uniform on the sphere.
/// Bodies that are rotationally symmetric about an axis, with x on that axis,
/// are integrated by a deterministic 1-D quadrature over the polar angle
/// (method = grid, std_err_log = quadrature refinement delta); otherwise the
/// expectation is a Monte Carlo average over `angular_samples` directions.
/// Throws std::domain_error when x is not interior (h <= 0 in some sampled
/// direction).
VolumeEstimate polar_log_volume(const Body& body, const Vector& x, long angular_samples,
                                const RandomStream& stream);

enum class SantaloMethod { axis_golden_section, grid_2d };

struct SantaloReport {
    Vector point;
    LogValue polar_log_volume;
    int iterations = 0;
    Real residual = 0;          // norm of the polar centroid at the solution
    Real residual_std_err = 0;  // 0 for the deterministic quadrature verifier
    SantaloMethod method = SantaloMethod::axis_golden_section;
};

/// Norm (and standard error) of the centroid of (K - candidate)^circ,
/// estimated from the radial moment representation
///   centroid = (n/(n+1)) E[theta h^{-(n+1)}] / E[h^{-n}].
/// A small residual certifies the Santalo point.  Axisymmetric bodies with an
/// on-axis candidate use the deterministic quadrature; the general path is
/// Monte Carlo with a batch-means standard error.
struct CentroidResidual {
    Real residual = 0;
    Real std_err = 0;
    Vector centroid;
};

CentroidResidual verify_santalo_fixed_point(const Body& body, const Vector& candidate,
                                            long samples, const RandomStream& stream);

/// Axis-restricted Santalo search.  Origin-symmetric bodies short-circuit to
/// the origin (uniqueness + symmetry).  Otherwise the body must be
/// rotationally symmetric about an axis; the polar volume is minimized along
/// it by a coarse bracket scan followed by golden-section iteration down to
/// `tolerance`.  The reported residual is recomputed by the verifier, not by
/// the search.
SantaloReport santalo_axis_search(const Body& body, Real tolerance, long verifier_samples,
                                  const RandomStream& stream);

/// First centroid coordinate of the half ball:
/// 2 vol_{n-1}(B_2^{n-1}) / ((n+1) vol_n(B_2^n)).
Real half_ball_centroid(int n);

/// Upper bound for the polar volume of the half ball about lambda e_1
/// (ellipsoid plus cone):
///   vol(B_2^n) (1-l^2)^{-(n+1)/2} + vol_{n-1}(B_2^{n-1}) / (n l (1+l^2)^{n-1}).
LogValue half_ball_polar_upper_bound(Real lambda, int n);

}  // namespace santalo
