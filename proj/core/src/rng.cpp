#include "subdcor/rng.hpp"

#include <limits>

namespace subdcor {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t key, std::uint64_t tag) noexcept {
  return splitmix64(key ^ splitmix64(tag ^ 0x5851f42d4c957f2dULL));
}

Rng::Rng(std::uint64_t key) : key_(key), engine_(splitmix64(key)) {}

Rng Rng::derive(std::uint64_t tag) const { return Rng(mix_seed(key_, tag)); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace subdcor
