#include "subdcor/dc_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subdcor/dcor.hpp"
#include "subdcor/error.hpp"

namespace subdcor {

DirectionScore dc_score(const JointTable& jt, Direction direction) {
  const Axis cause = direction == Direction::forward ? Axis::x : Axis::y;
  const auto p = marginal(jt, cause);
  if (p.size() < 2) {
    throw Error(Errc::insufficient_samples,
                "baseline needs at least 2 categories of the conditioning variable, got " + std::to_string(p.size()));
  }
  const Matrix cond = conditional(jt, cause);
  const SampleMatrix a(p.size(), 1, p);
  const DCorResult r = distance_correlation(a, cond);
  return {direction, r.dcor, p.size(), r.degenerate};
}

DirectionScore dc_score(const DiscreteDataset& ds, Direction direction) {
  return dc_score(joint_counts(ds), direction);
}

DcReport dc_infer(const DiscreteDataset& ds) {
  const JointTable jt = joint_counts(ds);
  DcReport r;
  r.forward = dc_score(jt, Direction::forward);
  r.backward = dc_score(jt, Direction::backward);
  r.decision = decide(r.forward.score, r.backward.score);
  return r;
}

std::vector<BiasPoint> support_bias_curve(std::span<const std::size_t> support_sizes, std::size_t n,
                                          std::size_t reps, const Rng& rng) {
  if (reps == 0) throw Error(Errc::invalid_input, "reps must be positive");
  std::vector<BiasPoint> curve;
  for (std::size_t s : support_sizes) {
    if (s < 2) throw Error(Errc::invalid_input, "support sizes must be at least 2");
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      Rng stream = rng.derive(s).derive(r);
      std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(n);
      for (auto& p : pairs) {
        p.first = stream.below(s);
        p.second = stream.below(s);
      }
      const double score = dc_score(encode(pairs), Direction::forward).score;
      sum += score;
      sum_sq += score * score;
    }
    const double k = static_cast<double>(reps);
    const double mean = sum / k;
    const double var = reps > 1 ? std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0)) : 0.0;
    curve.push_back({s, mean, std::sqrt(var / k)});
  }
  return curve;
}

}  // namespace subdcor
