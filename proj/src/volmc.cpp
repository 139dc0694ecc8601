#include "santalo/volmc.hpp"

#include "santalo/parallel.hpp"

#include <numbers>

namespace santalo {

namespace {

constexpr Real kInvSqrt2 = 0.70710678118654752440;

Real draw_pgauss(Real p, RandomStream& stream) {
    if (p == 1.0) {
        const Real sign = stream.next_uniform() < 0.5 ? -1.0 : 1.0;
        return sign * stream.next_exponential();
    }
    if (p == 2.0) return stream.next_normal() * kInvSqrt2;  // density ~ e^{-t^2}
    const Real sign = stream.next_uniform() < 0.5 ? -1.0 : 1.0;
    return sign * std::pow(stream.next_gamma(1.0 / p), 1.0 / p);
}

Real wilson_half_width(Real f, long n) {
    // z = 1 half-width; behaves like sqrt(f(1-f)/n) away from the edges and
    // stays positive at f = 0 or 1.
    const Real nn = static_cast<Real>(n);
    return std::sqrt(f * (1.0 - f) / nn + 1.0 / (4.0 * nn * nn)) / (1.0 + 1.0 / nn);
}

struct IndicatorSpec {
    Real p = 2;       // sampling exponent
    Real q = 1;       // numerator exponent of the ratio
    int n = 1;
    Real threshold = 0;
    bool radial = false;  // divide threshold by R = U^{1/n}
    bool stratified = false;
};

long indicator_hits_block(const IndicatorSpec& spec, long first, long count, long total,
                          RandomStream stream) {
    long hits = 0;
    const bool p1 = spec.p == 1.0, p2 = spec.p == 2.0;
    const bool q1 = spec.q == 1.0, q2 = spec.q == 2.0;
    for (long i = 0; i < count; ++i) {
        Real s1 = 0, s2 = 0, sp = 0, sq = 0;
        for (int j = 0; j < spec.n; ++j) {
            const Real x = std::abs(draw_pgauss(spec.p, stream));
            if (p1 || q1) s1 += x;
            if (p2 || q2) s2 += x * x;
            if (!p1 && !p2) sp += std::pow(x, spec.p);
            if (!q1 && !q2) sq += std::pow(x, spec.q);
        }
        const Real norm_p = p1 ? s1 : (p2 ? std::sqrt(s2) : std::pow(sp, 1.0 / spec.p));
        const Real norm_q = q1 ? s1 : (q2 ? std::sqrt(s2) : std::pow(sq, 1.0 / spec.q));
        Real thr = spec.threshold;
        if (spec.radial) {
            Real u = stream.next_uniform();
            if (spec.stratified) u = (static_cast<Real>(first + i) + u) / static_cast<Real>(total);
            thr /= std::pow(u, 1.0 / spec.n);
        }
        if (norm_q <= thr * norm_p) ++hits;
    }
    return hits;
}

ProbEstimate indicator_fraction(const IndicatorSpec& spec, long samples,
                                const RandomStream& stream, const McOptions& opts) {
    if (samples < 1) throw std::domain_error("indicator estimate: samples must be >= 1");
    const long block = std::max<long>(1, opts.block_size);
    const long nblocks = (samples + block - 1) / block;
    std::vector<long> hits(static_cast<std::size_t>(nblocks), 0);
    par::parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
        const long first = static_cast<long>(b) * block;
        const long count = std::min(block, samples - first);
        hits[b] = indicator_hits_block(spec, first, count, samples,
                                       stream.substream(static_cast<std::uint64_t>(b)));
    });
    long total_hits = 0;
    for (long h : hits) total_hits += h;  // ascending block order
    ProbEstimate est;
    est.samples = samples;
    est.value = static_cast<Real>(total_hits) / static_cast<Real>(samples);
    est.std_err = wilson_half_width(est.value, samples);
    return est;
}

void check_pq(Real p, Real q) {
    if (!(p >= 1)) throw std::domain_error("p must be >= 1");
    if (!(q >= 1)) throw std::domain_error("q must be >= 1");
}

}  // namespace

std::vector<Real> sample_pgauss(Real p, long count, RandomStream& stream) {
    if (!(p >= 1)) throw std::domain_error("sample_pgauss: p must be >= 1");
    if (count < 1) throw std::domain_error("sample_pgauss: count must be >= 1");
    std::vector<Real> out(static_cast<std::size_t>(count));
    for (auto& x : out) x = draw_pgauss(p, stream);
    return out;
}

std::vector<Real> sample_standard_normal(long count, RandomStream& stream) {
    if (count < 1) throw std::domain_error("sample_standard_normal: count must be >= 1");
    std::vector<Real> out(static_cast<std::size_t>(count));
    for (auto& x : out) x = stream.next_normal();
    return out;
}

Real pq_moment(Real p, Real q) {
    if (!(p >= 1)) throw std::domain_error("pq_moment: p must be >= 1");
    if (!(q >= 0)) throw std::domain_error("pq_moment: q must be >= 0");
    return std::exp(log_gamma((q + 1.0) / p) - log_gamma(1.0 / p));
}

ProbEstimate ratio_cdf(Real p, Real q, int n, Real u, long samples, const RandomStream& stream,
                       const McOptions& opts) {
    check_pq(p, q);
    if (!(u >= 0)) throw std::domain_error("ratio_cdf: u must be >= 0");
    IndicatorSpec spec{p, q, n, u, /*radial=*/false, /*stratified=*/false};
    return indicator_fraction(spec, samples, stream, opts);
}

ProbEstimate intersect_fraction(Real p, Real q, int n, Real t, long samples,
                                const RandomStream& stream, const McOptions& opts) {
    check_pq(p, q);
    if (!(t >= 0)) throw std::domain_error("intersect_fraction: scale must be >= 0");
    if (t == 0) return ProbEstimate{0.0, 0.0, samples};
    IndicatorSpec spec{p, q, n, t, /*radial=*/true, opts.stratified};
    return indicator_fraction(spec, samples, stream, opts);
}

VolumeEstimate intersect_volume(Real p, Real q, int n, Real s, long samples,
                                const RandomStream& stream, const McOptions& opts) {
    if (!(s >= 0)) throw std::domain_error("intersect_volume: s must be >= 0");
    const ProbEstimate frac = intersect_fraction(p, q, n, s, samples, stream, opts);
    VolumeEstimate est;
    est.samples = samples;
    est.method = EstimateMethod::monte_carlo;
    const Real log_ball = lp_ball_log_volume(LpExponent(p), n).log_magnitude;
    if (frac.value == 0) {
        est.log_value = LogValue::from_log(kNegInf);
        est.std_err_log = 0;
    } else {
        est.log_value = LogValue::from_log(std::log(frac.value) + log_ball);
        est.std_err_log = frac.std_err / frac.value;
    }
    return est;
}

VolumeEstimate grid_volume(const Body& body, int resolution) {
    if (body.dim < 1 || body.dim > 3)
        throw std::invalid_argument("grid_volume: only dimensions 1..3 are supported");
    if (resolution < 100) throw std::domain_error("grid_volume: resolution must be >= 100");
    const int d = body.dim;
    const Real R = body.out_radius;
    const Real h = 2.0 * R / resolution;
    const Real cell = std::pow(h, d);
    const Real half_diag = 0.5 * h * std::sqrt(static_cast<Real>(d));
    // gauge is (1/in_radius)-Lipschitz; cells whose center gauge is within
    // this margin of 1 may straddle the boundary
    const Real margin =
        body.in_radius > 0 ? half_diag / body.in_radius : std::numeric_limits<Real>::infinity();

    const long nx = resolution;
    std::vector<long> inside_rows(static_cast<std::size_t>(nx), 0);
    std::vector<long> boundary_rows(static_cast<std::size_t>(nx), 0);
    par::parallel_for(static_cast<std::size_t>(nx), [&](std::size_t ix) {
        Vector z(d);
        z[0] = -R + (static_cast<Real>(ix) + 0.5) * h;
        long inside = 0, boundary = 0;
        const long ny = d >= 2 ? resolution : 1;
        const long nz = d >= 3 ? resolution : 1;
        for (long iy = 0; iy < ny; ++iy) {
            if (d >= 2) z[1] = -R + (iy + 0.5) * h;
            for (long iz = 0; iz < nz; ++iz) {
                if (d >= 3) z[2] = -R + (iz + 0.5) * h;
                const Real g = body.gauge(z);
                if (g <= 1.0) ++inside;
                if (std::abs(g - 1.0) <= margin) ++boundary;
            }
        }
        inside_rows[ix] = inside;
        boundary_rows[ix] = boundary;
    });
    long inside = 0, boundary = 0;
    for (long v : inside_rows) inside += v;
    for (long v : boundary_rows) boundary += v;

    VolumeEstimate est;
    est.method = EstimateMethod::grid;
    est.samples = static_cast<long>(std::pow(static_cast<Real>(resolution), d));
    const Real vol = inside * cell;
    const Real err = 0.5 * boundary * cell;
    est.log_value = LogValue::from_value(vol);
    est.std_err_log = vol > 0 ? err / vol : 0.0;
    return est;
}

Real threshold_ball_in_cross(int n, Real gamma) {
    if (n < 1 || !(gamma > 0)) throw std::domain_error("threshold_ball_in_cross: bad arguments");
    const Real log_ratio = (lp_ball_log_volume(LpExponent(1.0), n).log_magnitude -
                            lp_ball_log_volume(LpExponent(2.0), n).log_magnitude) /
                           n;
    return (std::sqrt(2.0 / std::numbers::pi) + gamma) * std::sqrt(static_cast<Real>(n)) *
           std::exp(log_ratio);
}

Real threshold_cross_in_ball(int n, Real gamma) {
    if (n < 1 || !(gamma > 0)) throw std::domain_error("threshold_cross_in_ball: bad arguments");
    const Real log_ratio = (lp_ball_log_volume(LpExponent(2.0), n).log_magnitude -
                            lp_ball_log_volume(LpExponent(1.0), n).log_magnitude) /
                           n;
    return (std::numbers::sqrt2 + gamma) / std::sqrt(static_cast<Real>(n)) * std::exp(log_ratio);
}

ProbEstimate half_test(HalfTestKind kind, int n, Real scale, long samples,
                       const RandomStream& stream, const McOptions& opts) {
    if (!(scale >= 0)) throw std::domain_error("half_test: scale must be >= 0");
    if (scale == 0) return ProbEstimate{0.0, 0.0, samples};
    const Real log2v = lp_ball_log_volume(LpExponent(2.0), n).log_magnitude / n;
    const Real log1v = lp_ball_log_volume(LpExponent(1.0), n).log_magnitude / n;
    if (kind == HalfTestKind::ball_in_cross) {
        // vol(B_2 cap t B_1) / vol(B_2) with t = scale * vol(B_2)^{1/n} / vol(B_1)^{1/n}
        return intersect_fraction(2.0, 1.0, n, scale * std::exp(log2v - log1v), samples, stream,
                                  opts);
    }
    return intersect_fraction(1.0, 2.0, n, scale * std::exp(log1v - log2v), samples, stream, opts);
}

}  // namespace santalo
