#pragma once

#include "santalo/bodies.hpp"
#include "santalo/rng.hpp"
#include "santalo/types.hpp"
#include "santalo/volmc.hpp"

#include <functional>
#include <vector>

namespace santalo {

/// Closed-form endpoints of the concentration window:
///   s0 = (1 - sqrt(e)) / (b + a sqrt(e)),
///   s1 = (2 - sqrt(pi e)) / (a sqrt(pi e) + 2 b).
/// s0 < s1 for all positive a, b.
struct WindowConstants {
    Real s0 = 0;
    Real s1 = 0;
    Real a = 0;
    Real b = 0;
};

WindowConstants window_constants(Real a, Real b);

struct ProfileOptions {
    Real window_pad = 0.05;     // delta added on both sides of [s0, s1]
    Real fraction_floor = 1e-3; // below this the analytic envelope replaces MC
    McOptions mc;
    /// Called after each grid point (done, total); used for stderr progress.
    std::function<void(int, int)> on_section_done;
};

/// Log volumes of the two factors of the section (each is an upper bound for
/// the section volume):
///   b1 side: 2^n (1 - s b)^n vol(B_1^n)
///   b2 side: (1 + s a)^n vol(B_2^n)^2
Real log_envelope_b1(const HullBodyParams& params, Real s);
Real log_envelope_b2(const HullBodyParams& params, Real s);
Real log_envelope(const HullBodyParams& params, Real s);  // min of the two

/// log vol of the section at height s: the analytic prefactor of whichever
/// factorization has the smaller envelope (hence the larger normalized
/// fraction) plus the log of the MC-estimated fraction.  When the estimated
/// fraction falls below the floor, the envelope itself is returned, tagged
/// method = analytic-bound.
VolumeEstimate section_log_volume(const HullBodyParams& params, Real s, long samples,
                                  const RandomStream& stream, const ProfileOptions& opts = {});

/// Grid of section estimates with their analytic envelopes.
struct SectionProfile {
    HullBodyParams params;
    std::vector<Real> s_grid;
    std::vector<VolumeEstimate> log_vols;
    std::vector<LogValue> envelope;
};

/// Profile on a caller-provided grid; one substream per grid point, sections
/// estimated independently (and possibly concurrently).
SectionProfile section_profile(const HullBodyParams& params, std::vector<Real> s_grid,
                               long samples, const RandomStream& stream,
                               const ProfileOptions& opts = {});

/// Profile on a uniform grid over the padded window [s0 - pad, s1 + pad].
SectionProfile window_profile(const HullBodyParams& params, int grid_points, long samples,
                              const RandomStream& stream, const ProfileOptions& opts = {});

struct CentroidHeightResult {
    Real value = 0;      // quadrature ratio of s-weighted to plain section mass
    Real error_bar = 0;  // MC quadrature error plus analytic tail bound
    Real mc_err = 0;
    Real tail_err = 0;
    Real tail_fraction = 0;   // analytic tail mass over window mass
    Real window_mass_log = 0;
    int grid_points = 0;
    long samples_per_section = 0;
};

/// Centroid height of the polar hull body along the last coordinate,
/// integrated over the window profile; tails outside the window are bounded
/// by the analytic envelope and folded into the error bar.  Throws
/// diagnostics_error when the tail bound exceeds 10% of the window mass
/// (dimension too small for the window to carry the mass).
CentroidHeightResult centroid_from_profile(const SectionProfile& profile,
                                           const ProfileOptions& opts = {});

CentroidHeightResult polar_centroid_height(const HullBodyParams& params, int grid_points,
                                           long samples, const RandomStream& stream,
                                           const ProfileOptions& opts = {});

/// Same quadrature machinery for an arbitrary section-volume function on
/// [lo, hi] (no analytic tails); used for symmetry sanity checks.
Real centroid_of_section_function(const std::function<VolumeEstimate(Real)>& section, Real lo,
                                  Real hi, int grid_points);

struct ConcentrationReport {
    Real gamma = 0;
    bool total_vs_window = false;  // total mass <= (1+gamma) * window mass
    bool left_tail = false;        // |s|-weighted left tail <= gamma * total
    bool right_tail = false;       // |s|-weighted right tail <= gamma * total
    Real tail_mass_fraction = 0;   // (left + right tail bound) / total
    Real weighted_left_fraction = 0;   // weighted left tail bound / (gamma * total)
    Real weighted_right_fraction = 0;  // weighted right tail bound / (gamma * total)
};

/// Concentration inequalities evaluated numerically: window mass from the MC
/// profile, tail masses bounded by integrating the analytic envelope in
/// closed form.  The profile's padding must equal gamma.
ConcentrationReport concentration_from_profile(const SectionProfile& profile, Real gamma);

ConcentrationReport concentration_check(const HullBodyParams& params, Real gamma,
                                        int grid_points, long samples,
                                        const RandomStream& stream);

struct SeparationReport {
    WindowConstants window;
    CentroidHeightResult height;       // g* of the polar body (its Santalo point is 0)
    Real polar_chord = 0;              // 1/a + 1/b, axis chord of the polar body
    Real hull_height = 0;              // a + b, height of the hull body
    Real ratio_over_polar_chord = 0;   // |g*| / (1/a + 1/b)
    Real ratio_over_hull_height = 0;   // |g*| / (a + b)
    Real target_lo = 0.142673;         // published separation bounds for comparison
    Real target_hi = 0.18383;
    bool normalization_discrepancy = true;  // targets match the hull-height ratio only
    ConcentrationReport concentration;
};

/// Full pipeline: centroid height, both ratio normalizations (the published
/// constants correspond to dividing by the hull height a + b, not the polar
/// chord 1/a + 1/b; both are reported and the discrepancy is flagged), and
/// the concentration checks, all from one window profile.
SeparationReport separation_report(const HullBodyParams& params, int grid_points, long samples,
                                   Real gamma, const RandomStream& stream,
                                   const ProfileOptions& opts = {});

}  // namespace santalo
