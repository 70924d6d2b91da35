#pragma once

#include <cstdint>
#include <random>

namespace subdcor {

/// Seeded random stream with counter-based substreams.
///
/// `derive(tag)` is a pure function of (key, tag), so substreams do not depend
/// on how much of the parent stream has been consumed or on evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t key);

  std::uint64_t key() const noexcept { return key_; }
  Rng derive(std::uint64_t tag) const;

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t key, std::uint64_t tag) noexcept;

}  // namespace subdcor
