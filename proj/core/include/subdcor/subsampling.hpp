#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subdcor/dcor.hpp"
#include "subdcor/decision.hpp"
#include "subdcor/empirical.hpp"
#include "subdcor/rng.hpp"

namespace subdcor {

struct SubsampleConfig {
  /// Candidate inclusion probabilities, strictly increasing inside (0, 1).
  std::vector<double> p_grid;
  /// Ensemble size.
  std::size_t m = 100;
  std::uint64_t seed = 0;
  /// Subsamples retaining fewer observations are redrawn.
  std::size_t min_effective = 10;
  std::size_t max_retries = 100;

  void validate() const;
};

/// `count` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Ten evenly spaced probabilities over [0.01, 0.99].
std::vector<double> default_p_grid();

struct SubsampleLimits {
  std::size_t min_effective = 10;
  std::size_t max_retries = 100;
};

/// Keeps every observation independently with probability q. Categories are
/// inherited from `ds`.
DiscreteDataset subsample(const DiscreteDataset& ds, double q, Rng& rng, SubsampleLimits limits = {});

/// Distance correlation across an ensemble of m subsamples between the cause
/// marginal and the flattened mechanism. Subsample i draws from stream.derive(i).
DCorResult ensemble_dcor(const DiscreteDataset& ds, Direction direction, double q, std::size_t m,
                         const Rng& stream, SubsampleLimits limits = {});

double direction_score(const DiscreteDataset& ds, Direction direction, double q, std::size_t m,
                       const Rng& stream, SubsampleLimits limits = {});

struct GridScore {
  double p = 0.0;
  /// Empty when the grid point produced a degenerate ensemble.
  std::optional<double> forward;
  std::optional<double> backward;
};

struct PSelection {
  double p_f = 0.0;
  double p_b = 0.0;
  double p_star = 0.0;
  std::vector<GridScore> scores;
};

/// Grid point g of direction d draws from stream.derive(d).derive(g).
PSelection select_p(const DiscreteDataset& ds, std::size_t m, std::span<const double> grid,
                    const Rng& stream, SubsampleLimits limits = {});

struct DirectionReport {
  double forward_score = 0.0;
  double backward_score = 0.0;
  double p_star = 0.0;
  double p_f = 0.0;
  double p_b = 0.0;
  Decision decision = Decision::tie;
  double relative_gap = 0.0;
  std::vector<GridScore> per_p_scores;
};

/// Subsampled distance-correlation direction test. All randomness is derived
/// from cfg.seed.
DirectionReport infer_direction(const DiscreteDataset& ds, const SubsampleConfig& cfg);

struct StabilityPoint {
  std::size_t m = 0;
  double forward_mean = 0.0;
  double forward_sd = 0.0;
  double backward_mean = 0.0;
  double backward_sd = 0.0;
};

/// Repeats direction_score `reps` times per ensemble size. Sample sd; 0 for reps == 1.
std::vector<StabilityPoint> m_stability_curve(const DiscreteDataset& ds, double q,
                                              std::span<const std::size_t> m_values, std::size_t reps,
                                              const Rng& stream, SubsampleLimits limits = {});

}  // namespace subdcor
