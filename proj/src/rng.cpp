#include "santalo/rng.hpp"

#include <numbers>

namespace santalo {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_id * kGolden + 1));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix_seed(seed, stream_id)) {}

RandomStream RandomStream::substream(std::uint64_t k) const {
    return RandomStream(seed_, splitmix64(stream_id_ ^ (kGolden * (k + 1))));
}

std::uint64_t RandomStream::next_u64() {
    ++position_;
    return engine_();
}

Real RandomStream::next_uniform() {
    // 53 random bits mapped to cell midpoints of (0,1); never returns 0 or 1.
    return (static_cast<Real>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

Real RandomStream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const Real u1 = next_uniform();
    const Real u2 = next_uniform();
    const Real r = std::sqrt(-2.0 * std::log(u1));
    const Real a = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

Real RandomStream::next_exponential() { return -std::log(next_uniform()); }

Real RandomStream::next_gamma(Real shape) {
    if (!(shape > 0)) throw std::domain_error("next_gamma: shape must be positive");
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a+1) * U^{1/a}
        const Real g = next_gamma(shape + 1.0);
        return g * std::pow(next_uniform(), 1.0 / shape);
    }
    const Real d = shape - 1.0 / 3.0;
    const Real c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        Real x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const Real u = next_uniform();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace santalo
