#pragma once

// Symmetric stable variates by the Chambers-Mallows-Stuck construction.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symstable/params.hpp"

namespace symstable {

/// Counter-based stream: output k is a SplitMix64 finalizer applied to
/// key + k * golden. Streams derived by split() use decorrelated keys, so
/// replications never share state. Not safe to share across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept;

  /// Independent child stream for replication `index`; this stream is unchanged.
  RngStream split(std::uint64_t index) const noexcept;

 private:
  RngStream(std::uint64_t seed, std::uint64_t key) noexcept : seed_(seed), key_(key) {}

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

double sample_one(const StableParams& p, RngStream& rng);

std::vector<double> sample(const StableParams& p, std::size_t n, RngStream& rng);

}  // namespace symstable
