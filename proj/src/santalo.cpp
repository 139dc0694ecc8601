#include "santalo/santalo.hpp"

#include "santalo/parallel.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace santalo {

namespace {

struct QuadRule {
    std::vector<Real> x;  // nodes on [-1, 1]
    std::vector<Real> w;
};

QuadRule gauss_legendre(int m) {
    QuadRule rule;
    rule.x.resize(m);
    rule.w.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        Real t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        Real p1 = 0, dp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= m; ++k) {
                const Real pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = m * (t * p1 - p0) / (t * t - 1.0);
            const Real dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        rule.x[i] = -t;
        rule.x[m - 1 - i] = t;
        rule.w[i] = rule.w[m - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return rule;
}

const QuadRule& cached_rule(int m) {
    static std::mutex mu;
    static std::map<int, QuadRule> rules;
    std::scoped_lock lock(mu);
    auto it = rules.find(m);
    if (it == rules.end()) it = rules.emplace(m, gauss_legendre(m)).first;
    return it->second;
}

// Log-integrals over the sphere for an axisymmetric support function, reduced
// to the polar angle phi in [0, pi] with weight sin^{n-2}(phi).  The interval
// is split at pi/2 (support functions like the half ball's have a kink
// there), with Gauss-Legendre nodes per panel.
struct AxisMoments {
    Real log_one = kNegInf;        // integral of the weight alone
    Real log_den = kNegInf;        // h^{-n}
    Real log_num_plus = kNegInf;   // cos * h^{-(n+1)} over cos > 0
    Real log_num_minus = kNegInf;  // |cos| * h^{-(n+1)} over cos < 0
};

AxisMoments axis_moments(const Body& body, const Vector& x, int axis, int nodes_per_panel) {
    const int n = body.dim;
    const QuadRule& rule = cached_rule(nodes_per_panel);
    const int off_axis = axis == 0 ? (n > 1 ? 1 : 0) : 0;

    std::vector<Real> lw_one, lw_den, lw_plus, lw_minus;
    lw_one.reserve(2 * nodes_per_panel);
    lw_den.reserve(2 * nodes_per_panel);
    Vector theta = Vector::Zero(n);
    for (int panel = 0; panel < 2; ++panel) {
        const Real lo = panel == 0 ? 0.0 : 0.5 * std::numbers::pi;
        const Real half = 0.25 * std::numbers::pi;  // half-length of each panel
        for (int i = 0; i < nodes_per_panel; ++i) {
            const Real phi = lo + half * (rule.x[i] + 1.0);
            const Real c = std::cos(phi);
            const Real s = std::sin(phi);
            theta[axis] = c;
            if (n > 1) theta[off_axis] = s;
            const Real h = body.support_about(x, theta);
            if (!(h > 0))
                throw std::domain_error(
                    "polar volume: point is not interior (support <= 0 in some direction)");
            const Real logw = std::log(rule.w[i] * half) + (n - 2) * std::log(s);
            const Real logh = std::log(h);
            lw_one.push_back(logw);
            lw_den.push_back(logw - n * logh);
            const Real lnum = logw - (n + 1) * logh + std::log(std::abs(c));
            if (c > 0)
                lw_plus.push_back(lnum);
            else if (c < 0)
                lw_minus.push_back(lnum);
        }
    }
    auto lse = [](const std::vector<Real>& v) {
        Real hi = kNegInf;
        for (Real t : v) hi = std::max(hi, t);
        if (hi == kNegInf) return kNegInf;
        Real sum = 0;
        for (Real t : v) sum += std::exp(t - hi);
        return hi + std::log(sum);
    };
    AxisMoments m;
    m.log_one = lse(lw_one);
    m.log_den = lse(lw_den);
    m.log_num_plus = lse(lw_plus);
    m.log_num_minus = lse(lw_minus);
    return m;
}

bool on_axis(const Vector& x, int axis) {
    for (Index i = 0; i < x.size(); ++i)
        if (i != axis && x[i] != 0.0) return false;
    return true;
}

bool use_axis_quadrature(const Body& body, const Vector& x) {
    return body.symmetry_axis >= 0 && on_axis(x, body.symmetry_axis);
}

constexpr int kQuadNodes = 384;

Real axis_polar_log_volume(const Body& body, const Vector& x, Real* refinement_delta) {
    const int axis = body.symmetry_axis;
    const AxisMoments fine = axis_moments(body, x, axis, kQuadNodes);
    const Real value = lp_ball_log_volume(LpExponent(2.0), body.dim).log_magnitude +
                       fine.log_den - fine.log_one;
    if (refinement_delta) {
        const AxisMoments coarse = axis_moments(body, x, axis, kQuadNodes / 2);
        const Real approx = lp_ball_log_volume(LpExponent(2.0), body.dim).log_magnitude +
                            coarse.log_den - coarse.log_one;
        *refinement_delta = std::abs(value - approx);
    }
    return value;
}

void require_interior(const Body& body, const Vector& x) {
    if (x.size() != body.dim)
        throw std::invalid_argument("polar volume: point dimension mismatch");
    if (!(body.gauge(x - body.anchor) < 1.0))
        throw std::domain_error("polar volume: point is not interior to the body");
}

struct McPolarPartial {
    Real shift = kNegInf;  // max of -n log h within the block
    Real sum = 0;          // sum of exp(w - shift)
    Real sum_sq = 0;
};

McPolarPartial mc_polar_block(const Body& body, const Vector& x, long count,
                              RandomStream stream) {
    const int n = body.dim;
    McPolarPartial part;
    std::vector<Real> logs(static_cast<std::size_t>(count));
    Vector theta(n);
    for (long i = 0; i < count; ++i) {
        for (int j = 0; j < n; ++j) theta[j] = stream.next_normal();
        theta /= theta.norm();
        const Real h = body.support_about(x, theta);
        if (!(h > 0))
            throw std::domain_error(
                "polar volume: point is not interior (support <= 0 in some direction)");
        logs[static_cast<std::size_t>(i)] = -n * std::log(h);
        part.shift = std::max(part.shift, logs[static_cast<std::size_t>(i)]);
    }
    for (Real w : logs) {
        const Real e = std::exp(w - part.shift);
        part.sum += e;
        part.sum_sq += e * e;
    }
    return part;
}

}  // namespace

VolumeEstimate polar_log_volume(const Body& body, const Vector& x, long angular_samples,
                                const RandomStream& stream) {
    if (!body.has_support())
        throw std::invalid_argument("polar_log_volume: body has no support evaluator");
    require_interior(body, x);

    VolumeEstimate est;
    if (use_axis_quadrature(body, x)) {
        Real delta = 0;
        est.log_value = LogValue::from_log(axis_polar_log_volume(body, x, &delta));
        est.std_err_log = delta;
        est.samples = 2 * kQuadNodes;
        est.method = EstimateMethod::grid;
        return est;
    }

    if (angular_samples < 2)
        throw std::domain_error("polar_log_volume: need at least 2 angular samples");
    const long block = 16384;
    const long nblocks = (angular_samples + block - 1) / block;
    std::vector<McPolarPartial> parts(static_cast<std::size_t>(nblocks));
    par::parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
        const long first = static_cast<long>(b) * block;
        const long count = std::min(block, angular_samples - first);
        parts[b] = mc_polar_block(body, x, count, stream.substream(b));
    });
    Real shift = kNegInf;
    for (const auto& p : parts) shift = std::max(shift, p.shift);
    Real sum = 0, sum_sq = 0;
    for (const auto& p : parts) {  // ascending block order
        const Real r = std::exp(p.shift - shift);
        sum += p.sum * r;
        sum_sq += p.sum_sq * r * r;
    }
    const Real nn = static_cast<Real>(angular_samples);
    const Real mean = sum / nn;
    const Real var = std::max(0.0, sum_sq / nn - mean * mean);
    est.log_value = LogValue::from_log(lp_ball_log_volume(LpExponent(2.0), body.dim).log_magnitude +
                                       shift + std::log(mean));
    est.std_err_log = std::sqrt(var / nn) / mean;
    est.samples = angular_samples;
    est.method = EstimateMethod::monte_carlo;
    return est;
}

CentroidResidual verify_santalo_fixed_point(const Body& body, const Vector& candidate,
                                            long samples, const RandomStream& stream) {
    if (!body.has_support())
        throw std::invalid_argument("verify_santalo_fixed_point: body has no support evaluator");
    require_interior(body, candidate);
    const int n = body.dim;
    CentroidResidual out;
    out.centroid = Vector::Zero(n);

    if (use_axis_quadrature(body, candidate)) {
        const int axis = body.symmetry_axis;
        const AxisMoments m = axis_moments(body, candidate, axis, kQuadNodes);
        // signed numerator, common shift
        const Real hi = std::max(m.log_num_plus, m.log_num_minus);
        const Real num = std::exp(m.log_num_plus - hi) - std::exp(m.log_num_minus - hi);
        const Real c = static_cast<Real>(n) / (n + 1.0) * num * std::exp(hi - m.log_den);
        out.centroid[axis] = c;
        out.residual = std::abs(c);
        out.std_err = 0;
        return out;
    }

    // Monte Carlo over uniform directions; equal-size blocks so the
    // batch-means standard error is unweighted.
    const long block = 4096;
    const long nblocks = std::max<long>(8, (samples + block - 1) / block);
    const long per_block = (samples + nblocks - 1) / nblocks;
    struct Partial {
        Real shift = kNegInf;
        Real den = 0;        // sum exp(-n L - shift)
        Vector num;          // sum theta exp(-(n+1) L - shift)
    };
    std::vector<Partial> parts(static_cast<std::size_t>(nblocks));
    par::parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
        RandomStream rs = stream.substream(b);
        Partial part;
        part.num = Vector::Zero(n);
        std::vector<Real> logh(static_cast<std::size_t>(per_block));
        std::vector<Vector> dirs(static_cast<std::size_t>(per_block));
        for (long i = 0; i < per_block; ++i) {
            Vector theta(n);
            for (int j = 0; j < n; ++j) theta[j] = rs.next_normal();
            theta /= theta.norm();
            const Real h = body.support_about(candidate, theta);
            if (!(h > 0))
                throw std::domain_error(
                    "verify_santalo_fixed_point: candidate is not interior");
            logh[static_cast<std::size_t>(i)] = std::log(h);
            dirs[static_cast<std::size_t>(i)] = std::move(theta);
            part.shift = std::max(part.shift, -n * logh[static_cast<std::size_t>(i)]);
        }
        for (long i = 0; i < per_block; ++i) {
            const Real L = logh[static_cast<std::size_t>(i)];
            part.den += std::exp(-n * L - part.shift);
            part.num += dirs[static_cast<std::size_t>(i)] * std::exp(-(n + 1) * L - part.shift);
        }
        parts[b] = std::move(part);
    });

    // global ratio estimate with a common shift
    Real shift = kNegInf;
    for (const auto& p : parts) shift = std::max(shift, p.shift);
    Real den = 0;
    Vector num = Vector::Zero(n);
    std::vector<Vector> block_centroids;
    block_centroids.reserve(parts.size());
    for (const auto& p : parts) {
        const Real r = std::exp(p.shift - shift);
        den += p.den * r;
        num += p.num * r;
        block_centroids.push_back(static_cast<Real>(n) / (n + 1.0) * p.num / p.den);
    }
    out.centroid = static_cast<Real>(n) / (n + 1.0) * num / den;
    out.residual = out.centroid.norm();

    Vector mean = Vector::Zero(n);
    for (const auto& c : block_centroids) mean += c;
    mean /= static_cast<Real>(block_centroids.size());
    Real var = 0;
    for (const auto& c : block_centroids) var += (c - mean).squaredNorm();
    var /= static_cast<Real>(block_centroids.size()) *
           std::max<Real>(1.0, static_cast<Real>(block_centroids.size()) - 1.0);
    out.std_err = std::sqrt(var);
    return out;
}

SantaloReport santalo_axis_search(const Body& body, Real tolerance, long verifier_samples,
                                  const RandomStream& stream) {
    if (!(tolerance > 0)) throw std::domain_error("santalo_axis_search: tolerance must be > 0");
    if (!body.has_support())
        throw std::invalid_argument("santalo_axis_search: body has no support evaluator");

    SantaloReport rep;
    rep.method = SantaloMethod::axis_golden_section;

    if (body.origin_symmetric) {
        // symmetry plus uniqueness put the Santalo point at the origin
        rep.point = Vector::Zero(body.dim);
        rep.iterations = 0;
        rep.polar_log_volume =
            polar_log_volume(body, rep.point, verifier_samples, stream.substream(1)).log_value;
        const CentroidResidual res =
            verify_santalo_fixed_point(body, rep.point, verifier_samples, stream.substream(2));
        rep.residual = res.residual;
        rep.residual_std_err = res.std_err;
        return rep;
    }

    const int axis = body.symmetry_axis;
    if (axis < 0)
        throw std::invalid_argument(
            "santalo_axis_search: body is neither origin-symmetric nor axially symmetric");

    // interior axis interval about the anchor
    Vector e = Vector::Zero(body.dim);
    e[axis] = 1.0;
    const Real reach_plus = 1.0 / body.gauge(e);
    const Real reach_minus = 1.0 / body.gauge(-e);
    const Real anchor_c = body.anchor[axis];
    const Real lo = anchor_c - reach_minus;
    const Real hi = anchor_c + reach_plus;

    auto objective = [&](Real c) {
        Vector x = Vector::Zero(body.dim);
        x[axis] = c;
        return axis_polar_log_volume(body, x, nullptr);
    };

    // coarse bracket; the objective blows up at both ends, so the minimum is
    // interior and a unimodal bracket must show up in the scan
    const int scan_points = 33;
    const Real pad = 1e-7 * (hi - lo);
    std::vector<Real> sx(scan_points), sf(scan_points);
    for (int i = 0; i < scan_points; ++i) {
        sx[i] = lo + pad + (hi - lo - 2 * pad) * i / (scan_points - 1.0);
        sf[i] = objective(sx[i]);
    }
    int best = 0;
    for (int i = 1; i < scan_points; ++i)
        if (sf[i] < sf[best]) best = i;
    if (best == 0 || best == scan_points - 1)
        throw diagnostics_error("santalo_axis_search: no interior descent bracket found");

    Real a = sx[best - 1], b = sx[best + 1];
    int iterations = 0;
    const Real inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    Real x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    Real f1 = objective(x1), f2 = objective(x2);
    while (b - a > tolerance) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        }
        ++iterations;
        if (iterations > 200)
            throw diagnostics_error("santalo_axis_search: golden section failed to converge");
    }
    const Real c_star = 0.5 * (a + b);
    rep.point = Vector::Zero(body.dim);
    rep.point[axis] = c_star;
    rep.iterations = iterations;
    rep.polar_log_volume = LogValue::from_log(objective(c_star));
    const CentroidResidual res =
        verify_santalo_fixed_point(body, rep.point, verifier_samples, stream.substream(3));
    rep.residual = res.residual;
    rep.residual_std_err = res.std_err;
    return rep;
}

Real half_ball_centroid(int n) {
    if (n < 2) throw std::domain_error("half_ball_centroid: n must be >= 2");
    const Real log_out = lp_ball_log_volume(LpExponent(2.0), n).log_magnitude;
    const Real log_in = lp_ball_log_volume(LpExponent(2.0), n - 1).log_magnitude;
    return std::exp(std::numbers::ln2 + log_in - std::log(n + 1.0) - log_out);
}

LogValue half_ball_polar_upper_bound(Real lambda, int n) {
    if (!(lambda > 0) || !(lambda < 1))
        throw std::domain_error("half_ball_polar_upper_bound: lambda must be in (0, 1)");
    if (n < 2) throw std::domain_error("half_ball_polar_upper_bound: n must be >= 2");
    const Real one_m = 1.0 - lambda * lambda;
    const Real ellipsoid = lp_ball_log_volume(LpExponent(2.0), n).log_magnitude -
                           0.5 * (n + 1.0) * std::log(one_m);
    const Real cone = lp_ball_log_volume(LpExponent(2.0), n - 1).log_magnitude -
                      std::log(static_cast<Real>(n)) - std::log(lambda) -
                      (n - 1.0) * std::log1p(lambda * lambda);
    return log_add(LogValue::from_log(ellipsoid), LogValue::from_log(cone));
}

}  // namespace santalo
