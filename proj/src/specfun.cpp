#include "santalo/specfun.hpp"

#include <numbers>

namespace santalo {

namespace {

// Lanczos g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

Real lanczos_log_gamma(Real x) {
    // valid for x >= 0.5
    const Real z = x - 1.0;
    Real sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    const Real base = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(base) - base +
           std::log(sum);
}

}  // namespace

Real log_gamma(Real x) {
    if (!(x > 0) || !std::isfinite(x))
        throw std::domain_error("log_gamma: argument must be positive and finite");
    if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
    return lanczos_log_gamma(x);
}

LogValue lp_ball_log_volume(LpExponent p, int n) {
    if (n < 1) throw std::domain_error("lp_ball_log_volume: n must be >= 1");
    if (p.is_infinite()) return LogValue::from_log(n * std::numbers::ln2);
    const Real pv = p.value();
    const Real lg = n * (std::numbers::ln2 + log_gamma(1.0 + 1.0 / pv)) -
                    log_gamma(1.0 + static_cast<Real>(n) / pv);
    return LogValue::from_log(lg);
}

RootBounds euclid_ball_root_bounds(int n) {
    if (n < 3) throw std::domain_error("euclid_ball_root_bounds: n must be >= 3");
    const Real nn = n;
    const Real top = std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
    const Real den = std::sqrt(nn) * std::pow(std::numbers::pi * nn, 1.0 / (2.0 * nn));
    RootBounds b;
    b.upper = top / den;
    b.lower = b.upper / std::exp(1.0 / (6.0 * nn * (nn - 2.0)));
    return b;
}

}  // namespace santalo
