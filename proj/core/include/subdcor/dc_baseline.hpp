#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subdcor/decision.hpp"
#include "subdcor/empirical.hpp"
#include "subdcor/rng.hpp"

namespace subdcor {

struct DirectionScore {
  Direction direction = Direction::forward;
  double score = 0.0;
  std::size_t sample_count = 0;
  bool degenerate = false;
};

/// Baseline score: every category of the conditioning variable contributes one
/// sample (p(c), p(.|c)) to the distance correlation.
DirectionScore dc_score(const DiscreteDataset& ds, Direction direction);
DirectionScore dc_score(const JointTable& jt, Direction direction);

struct DcReport {
  DirectionScore forward;
  DirectionScore backward;
  Decision decision = Decision::tie;
};

DcReport dc_infer(const DiscreteDataset& ds);

struct BiasPoint {
  std::size_t support = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean forward baseline score for independent uniform pairs, per support size.
/// Replication r of support s draws from rng.derive(s).derive(r).
std::vector<BiasPoint> support_bias_curve(std::span<const std::size_t> support_sizes,
                                          std::size_t n, std::size_t reps, const Rng& rng);

}  // namespace subdcor
