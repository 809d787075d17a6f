#pragma once

#include <cstdint>
#include <limits>

namespace tesspath {

// Roles of the independent substreams of one replication.
enum class StreamRole : std::uint64_t {
  tessellation = 0,
  cox_high = 1,
  cox_low = 2,
  reference_points = 3,
};

// Counter-based random stream: the n-th output is a keyed hash of n, so any
// stream can be split into statistically independent children by hashing a
// tag into the key.  Satisfies UniformRandomBitGenerator.
class Stream {
public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key) : key_(mix(key ^ 0x6a09e667f3bcc909ULL)) {}

  // Stream for (seed, replication, role).
  static Stream for_replication(std::uint64_t seed, std::uint64_t replication, StreamRole role) {
    return Stream(seed).split(replication).split(static_cast<std::uint64_t>(role));
  }

  Stream split(std::uint64_t tag) const { return Stream(mix(key_ + mix(tag + 0x9e3779b97f4a7c15ULL))); }

  std::uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  // SplitMix64 finaliser.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tesspath
