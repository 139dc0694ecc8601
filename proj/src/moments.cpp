#include "santalo/moments.hpp"

#include <algorithm>
#include <numbers>

namespace santalo {

namespace {

Real log_binomial(int n, int k) {
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace

MixedVolumeTable mixed_volume_table(int n) {
    if (n < 1) throw std::domain_error("mixed_volume_table: n must be >= 1");
    MixedVolumeTable t;
    t.n = n;
    t.entries.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        const Real ball = k == n ? 0.0 : lp_ball_log_volume(LpExponent(2.0), n - k).log_magnitude;
        t.entries.push_back(LogValue::from_log(k * std::numbers::ln2 + ball));
    }
    return t;
}

LogValue minkowski_volume(int n, Real t) {
    if (!(t >= 0)) throw std::domain_error("minkowski_volume: t must be >= 0");
    const MixedVolumeTable table = mixed_volume_table(n);
    const Real log_t = t == 0 ? kNegInf : std::log(t);
    Real hi = kNegInf;
    std::vector<Real> terms(n + 1, kNegInf);
    for (int k = 0; k <= n; ++k) {
        if (k > 0 && t == 0) break;
        const Real base = log_binomial(n, k) + table.entry(k).log_magnitude;
        terms[k] = k == 0 ? base : base + k * log_t;
        hi = std::max(hi, terms[k]);
    }
    Real sum = 0;
    for (Real term : terms)
        if (term != kNegInf) sum += std::exp(term - hi);
    return LogValue::from_log(hi + std::log(sum));
}

Real hull_centroid_height_from_log_weights(std::span<const Real> log_weights, Real c) {
    if (log_weights.empty())
        throw std::domain_error("hull_centroid_height_from_log_weights: empty weights");
    if (!(c > 0)) throw std::domain_error("hull_centroid_height_from_log_weights: c must be > 0");
    const Real hi = *std::max_element(log_weights.begin(), log_weights.end());
    Real num = 0, den = 0;
    for (std::size_t k = 0; k < log_weights.size(); ++k) {
        const Real w = std::exp(log_weights[k] - hi);
        num += (static_cast<Real>(k) + 1.0) * w;
        den += w;
    }
    const int n = static_cast<int>(log_weights.size()) - 1;
    return c / (n + 2.0) * num / den;
}

Real hull_centroid_height(int n, Real c) {
    if (n < 1) throw std::domain_error("hull_centroid_height: n must be >= 1");
    const Real lg_half_n = log_gamma(1.0 + 0.5 * n);
    std::vector<Real> logw(n + 1);
    for (int k = 0; k <= n; ++k)
        logw[k] = -(static_cast<Real>(k) / n) * lg_half_n - log_gamma(1.0 + 0.5 * (n - k));
    return hull_centroid_height_from_log_weights(logw, c);
}

Real centroid_ratio_sequence(int n) { return hull_centroid_height(n, 1.0); }

Real hull_centroid_limit(Real a, Real b) {
    if (!(a > 0) || !(b > 0)) throw std::domain_error("hull_centroid_limit: a, b must be > 0");
    const Real inv_e = 1.0 / std::numbers::e;
    return inv_e * (-a) + (1.0 - inv_e) * b;
}

}  // namespace santalo
