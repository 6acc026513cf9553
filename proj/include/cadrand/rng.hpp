// Seedable random streams for reproducible replication.
#pragma once

#include <cstdint>

namespace cadrand {

/// SplitMix64 stream. Tiny, fast, and splittable: independent streams are
/// derived from a single master seed and a stream index, so replicate k of a
/// run is reproducible in isolation regardless of thread scheduling.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    /// Stream `stream_index` of the family keyed by `master_seed`.
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double next_double();

  private:
    std::uint64_t state_;
};

}  // namespace cadrand
