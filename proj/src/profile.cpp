#include "santalo/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace santalo {

namespace {

struct ProfileIntegral {
    Real shift = kNegInf;  // common log shift
    Real mass = 0;         // shifted window mass, trapezoid rule
    Real s_mass = 0;       // shifted integral of s * vol
    Real mass_err = 0;     // 1-sigma MC error of `mass`
    Real s_mass_err = 0;   // 1-sigma MC error of `s_mass`
};

ProfileIntegral integrate(const SectionProfile& p) {
    const std::size_t m = p.s_grid.size();
    if (m < 2) throw std::domain_error("profile integration: need at least 2 grid points");
    ProfileIntegral out;
    for (const auto& v : p.log_vols)
        out.shift = std::max(out.shift, v.log_value.log_magnitude);
    if (out.shift == kNegInf)
        throw diagnostics_error("profile integration: all sections are empty");
    Real err2_mass = 0, err2_smass = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Real w;
        if (i == 0)
            w = 0.5 * (p.s_grid[1] - p.s_grid[0]);
        else if (i + 1 == m)
            w = 0.5 * (p.s_grid[m - 1] - p.s_grid[m - 2]);
        else
            w = 0.5 * (p.s_grid[i + 1] - p.s_grid[i - 1]);
        const Real lv = p.log_vols[i].log_value.log_magnitude;
        if (lv == kNegInf) continue;
        const Real f = std::exp(lv - out.shift);
        out.mass += w * f;
        out.s_mass += w * p.s_grid[i] * f;
        if (p.log_vols[i].method == EstimateMethod::monte_carlo) {
            const Real sig = f * p.log_vols[i].std_err_log;
            err2_mass += w * w * sig * sig;
            err2_smass += w * w * p.s_grid[i] * p.s_grid[i] * sig * sig;
        }
    }
    out.mass_err = std::sqrt(err2_mass);
    out.s_mass_err = std::sqrt(err2_smass);
    return out;
}

// Closed-form envelope integrals over the two tail intervals.
Real log_left_tail_mass(const HullBodyParams& p, Real upper) {
    // integral over [-1/a, upper] of (1 + s a)^n vol(B_2^n)^2 ds
    const Real log_b2 = lp_ball_log_volume(LpExponent(2.0), p.n).log_magnitude;
    return 2.0 * log_b2 + (p.n + 1.0) * std::log1p(upper * p.a) -
           std::log(p.a * (p.n + 1.0));
}

Real log_right_tail_mass(const HullBodyParams& p, Real lower) {
    // integral over [lower, 1/b] of 2^n (1 - s b)^n vol(B_1^n) ds
    const Real log_b1 = lp_ball_log_volume(LpExponent(1.0), p.n).log_magnitude;
    return p.n * std::numbers::ln2 + log_b1 + (p.n + 1.0) * std::log1p(-lower * p.b) -
           std::log(p.b * (p.n + 1.0));
}

}  // namespace

WindowConstants window_constants(Real a, Real b) {
    if (!(a > 0) || !(b > 0)) throw std::domain_error("window_constants: a, b must be > 0");
    WindowConstants w;
    w.a = a;
    w.b = b;
    const Real se = std::sqrt(std::numbers::e);
    const Real spe = std::sqrt(std::numbers::pi * std::numbers::e);
    w.s0 = (1.0 - se) / (b + a * se);
    w.s1 = (2.0 - spe) / (a * spe + 2.0 * b);
    return w;
}

Real log_envelope_b1(const HullBodyParams& params, Real s) {
    return params.n * (std::numbers::ln2 + std::log1p(-s * params.b)) +
           lp_ball_log_volume(LpExponent(1.0), params.n).log_magnitude;
}

Real log_envelope_b2(const HullBodyParams& params, Real s) {
    return params.n * std::log1p(s * params.a) +
           2.0 * lp_ball_log_volume(LpExponent(2.0), params.n).log_magnitude;
}

Real log_envelope(const HullBodyParams& params, Real s) {
    return std::min(log_envelope_b1(params, s), log_envelope_b2(params, s));
}

VolumeEstimate section_log_volume(const HullBodyParams& params, Real s, long samples,
                                  const RandomStream& stream, const ProfileOptions& opts) {
    const SectionBody sec = polar_section(params, s);  // also validates the range
    if (sec.degenerate()) {
        VolumeEstimate e;
        e.log_value = LogValue::from_log(kNegInf);
        e.method = EstimateMethod::closed_form;
        return e;
    }
    const Real env1 = log_envelope_b1(params, s);
    const Real env2 = log_envelope_b2(params, s);
    // The smaller factor volume leaves the larger normalized fraction, which
    // is the one an indicator estimate can resolve.
    const bool b1_outer = env1 <= env2;
    ProbEstimate frac;
    if (b1_outer)
        frac = intersect_fraction(1.0, 2.0, params.n, sec.r2 / sec.r1, samples, stream, opts.mc);
    else
        frac = intersect_fraction(2.0, 1.0, params.n, sec.r1 / sec.r2, samples, stream, opts.mc);

    VolumeEstimate est;
    est.samples = samples;
    if (frac.value < opts.fraction_floor) {
        // too deep in a tail for indicator MC; fall back to the envelope
        est.log_value = LogValue::from_log(std::min(env1, env2));
        est.std_err_log = 0;
        est.method = EstimateMethod::analytic_bound;
        return est;
    }
    est.log_value = LogValue::from_log((b1_outer ? env1 : env2) + std::log(frac.value));
    est.std_err_log = frac.std_err / frac.value;
    est.method = EstimateMethod::monte_carlo;
    return est;
}

SectionProfile section_profile(const HullBodyParams& params, std::vector<Real> s_grid,
                               long samples, const RandomStream& stream,
                               const ProfileOptions& opts) {
    SectionProfile prof;
    prof.params = params;
    prof.s_grid = std::move(s_grid);
    prof.log_vols.resize(prof.s_grid.size());
    prof.envelope.resize(prof.s_grid.size());
    for (std::size_t i = 0; i < prof.s_grid.size(); ++i) {
        // one substream per grid point; block-level parallelism lives inside
        prof.log_vols[i] =
            section_log_volume(params, prof.s_grid[i], samples, stream.substream(i), opts);
        prof.envelope[i] = LogValue::from_log(log_envelope(params, prof.s_grid[i]));
        if (opts.on_section_done)
            opts.on_section_done(static_cast<int>(i) + 1, static_cast<int>(prof.s_grid.size()));
    }
    return prof;
}

SectionProfile window_profile(const HullBodyParams& params, int grid_points, long samples,
                              const RandomStream& stream, const ProfileOptions& opts) {
    if (grid_points < 16) throw std::domain_error("window_profile: need at least 16 grid points");
    const WindowConstants w = window_constants(params.a, params.b);
    const Real lo = w.s0 - opts.window_pad;
    const Real hi = w.s1 + opts.window_pad;
    std::vector<Real> grid(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (grid_points - 1.0);
    return section_profile(params, std::move(grid), samples, stream, opts);
}

CentroidHeightResult centroid_from_profile(const SectionProfile& profile,
                                           const ProfileOptions&) {
    const HullBodyParams& p = profile.params;
    const ProfileIntegral I = integrate(profile);
    CentroidHeightResult r;
    r.grid_points = static_cast<int>(profile.s_grid.size());
    r.samples_per_section = profile.log_vols.empty() ? 0 : profile.log_vols.front().samples;
    r.value = I.s_mass / I.mass;
    r.mc_err = (I.s_mass_err + std::abs(r.value) * I.mass_err) / I.mass;
    r.window_mass_log = I.shift + std::log(I.mass);

    const Real tl = std::exp(log_left_tail_mass(p, profile.s_grid.front()) - I.shift);
    const Real tr = std::exp(log_right_tail_mass(p, profile.s_grid.back()) - I.shift);
    r.tail_fraction = (tl + tr) / I.mass;
    if (r.tail_fraction > 0.10)
        throw diagnostics_error(
            "polar_centroid_height: analytic tail bound exceeds 10% of the window mass; "
            "the dimension is too small for the volume to concentrate in the window");
    // |s| <= 1/a on the left tail, <= 1/b on the right
    const Real weighted_tails = tl / p.a + tr / p.b;
    r.tail_err = (weighted_tails + std::abs(r.value) * (tl + tr)) / I.mass;
    r.error_bar = r.mc_err + r.tail_err;
    return r;
}

CentroidHeightResult polar_centroid_height(const HullBodyParams& params, int grid_points,
                                           long samples, const RandomStream& stream,
                                           const ProfileOptions& opts) {
    return centroid_from_profile(window_profile(params, grid_points, samples, stream, opts),
                                 opts);
}

Real centroid_of_section_function(const std::function<VolumeEstimate(Real)>& section, Real lo,
                                  Real hi, int grid_points) {
    if (grid_points < 2 || !(hi > lo))
        throw std::domain_error("centroid_of_section_function: bad grid");
    SectionProfile prof;
    prof.s_grid.resize(static_cast<std::size_t>(grid_points));
    prof.log_vols.resize(prof.s_grid.size());
    for (int i = 0; i < grid_points; ++i) {
        const Real s = lo + (hi - lo) * i / (grid_points - 1.0);
        prof.s_grid[static_cast<std::size_t>(i)] = s;
        prof.log_vols[static_cast<std::size_t>(i)] = section(s);
    }
    const ProfileIntegral I = integrate(prof);
    return I.s_mass / I.mass;
}

ConcentrationReport concentration_from_profile(const SectionProfile& profile, Real gamma) {
    if (!(gamma > 0)) throw std::domain_error("concentration check: gamma must be > 0");
    const HullBodyParams& p = profile.params;
    const WindowConstants w = window_constants(p.a, p.b);
    if (std::abs(profile.s_grid.front() - (w.s0 - gamma)) > 1e-9 ||
        std::abs(profile.s_grid.back() - (w.s1 + gamma)) > 1e-9)
        throw std::invalid_argument("concentration check: profile window must be padded by gamma");

    const ProfileIntegral I = integrate(profile);
    const Real tl = std::exp(log_left_tail_mass(p, profile.s_grid.front()) - I.shift);
    const Real tr = std::exp(log_right_tail_mass(p, profile.s_grid.back()) - I.shift);

    ConcentrationReport rep;
    rep.gamma = gamma;
    // tails bounded above by the envelope integrals; total mass bounded
    // below by the window mass alone
    rep.tail_mass_fraction = (tl + tr) / (I.mass + tl + tr);
    rep.total_vs_window = (tl + tr) <= gamma * I.mass;
    rep.weighted_left_fraction = (tl / p.a) / (gamma * I.mass);
    rep.weighted_right_fraction = (tr / p.b) / (gamma * I.mass);
    rep.left_tail = rep.weighted_left_fraction <= 1.0;
    rep.right_tail = rep.weighted_right_fraction <= 1.0;
    return rep;
}

ConcentrationReport concentration_check(const HullBodyParams& params, Real gamma,
                                        int grid_points, long samples,
                                        const RandomStream& stream) {
    ProfileOptions opts;
    opts.window_pad = gamma;
    return concentration_from_profile(
        window_profile(params, grid_points, samples, stream, opts), gamma);
}

SeparationReport separation_report(const HullBodyParams& params, int grid_points, long samples,
                                   Real gamma, const RandomStream& stream,
                                   const ProfileOptions& opts) {
    ProfileOptions run = opts;
    run.window_pad = gamma;  // one profile serves both the centroid and the checks
    const SectionProfile prof = window_profile(params, grid_points, samples, stream, run);

    SeparationReport rep;
    rep.window = window_constants(params.a, params.b);
    rep.height = centroid_from_profile(prof, run);
    rep.polar_chord = 1.0 / params.a + 1.0 / params.b;
    rep.hull_height = params.a + params.b;
    rep.ratio_over_polar_chord = std::abs(rep.height.value) / rep.polar_chord;
    rep.ratio_over_hull_height = std::abs(rep.height.value) / rep.hull_height;
    rep.concentration = concentration_from_profile(prof, gamma);
    return rep;
}

}  // namespace santalo
