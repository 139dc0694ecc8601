#pragma once

#include "santalo/specfun.hpp"
#include "santalo/types.hpp"

#include <span>
#include <vector>

namespace santalo {

/// Mixed volumes V_{n-k,k}(B_2^n, B_inf^n) = 2^k vol_{n-k}(B_2^{n-k}),
/// k = 0..n, with vol_0(B_2^0) = 1.
struct MixedVolumeTable {
    int n = 0;
    std::vector<LogValue> entries;  // index k

    LogValue entry(int k) const { return entries.at(static_cast<std::size_t>(k)); }
};

MixedVolumeTable mixed_volume_table(int n);

/// log of vol_n(B_2^n + t B_inf^n) = sum_k C(n,k) 2^k vol_{n-k}(B_2^{n-k}) t^k,
/// evaluated as a log-sum-exp; t >= 0.
LogValue minkowski_volume(int n, Real t);

/// Height of the centroid of co[(K, 0), (L, c)] over the K-face for arbitrary
/// section weights w_k proportional to V_{n-k,k}(K, L):
///   c/(n+2) * sum (k+1) w_k / sum w_k.
/// Weights are passed as logs and shifted before exponentiation.
Real hull_centroid_height_from_log_weights(std::span<const Real> log_weights, Real c);

/// Same height for the specific faces K = B_2^n / vol(B_2^n)^{1/n} and
/// L = B_inf^n / 2, whose weights reduce to
/// w_k = 1 / (Gamma(1+n/2)^{k/n} Gamma(1+(n-k)/2)).
Real hull_centroid_height(int n, Real c);

/// hull_centroid_height(n, 1); converges to 1 - 1/e as n grows.
Real centroid_ratio_sequence(int n);

/// Limit of the (n+1)-st centroid coordinate of co[(K,-a),(L,b)]:
/// (1/e)(-a) + (1 - 1/e) b.
Real hull_centroid_limit(Real a, Real b);

}  // namespace santalo
