#pragma once

#include "santalo/types.hpp"

#include <random>

namespace santalo {

/// Seeded, splittable source of variates with a deterministic block
/// structure.  Two streams built from the same (seed, stream_id) emit
/// identical sequences; distinct stream_ids give statistically independent
/// sequences.  Estimators derive one substream per fixed-size sample block
/// and reduce partial results in ascending block order, so results are
/// bit-reproducible for a fixed configuration regardless of how many worker
/// threads execute the blocks.
///
/// Streams are not meant to be shared across concurrent tasks; hand each
/// task its own substream instead.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    /// Count of raw 64-bit engine draws consumed so far.
    std::uint64_t position() const { return position_; }

    /// Independent child stream; a pure function of (seed, stream_id, k).
    RandomStream substream(std::uint64_t k) const;

    /// Uniform on the open interval (0, 1).
    Real next_uniform();

    /// Standard normal N(0,1) (Box-Muller, one value cached).
    Real next_normal();

    /// Exponential with unit rate.
    Real next_exponential();

    /// Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
    Real next_gamma(Real shape);

  private:
    std::uint64_t next_u64();

    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t position_ = 0;
    std::mt19937_64 engine_;
    bool has_cached_normal_ = false;
    Real cached_normal_ = 0;
};

}  // namespace santalo
