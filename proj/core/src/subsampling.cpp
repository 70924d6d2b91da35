#include "subdcor/subsampling.hpp"

#include <cmath>
#include <string>

#include "subdcor/error.hpp"

namespace subdcor {
namespace {

constexpr std::uint64_t kSelectStream = 1;
constexpr std::uint64_t kFinalStream = 2;

std::uint64_t direction_tag(Direction d) { return d == Direction::forward ? 0 : 1; }

void check_probability(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::invalid_input, "inclusion probability must lie in (0, 1)");
}

std::vector<std::size_t> draw_retained(std::size_t n, double q, Rng& rng, SubsampleLimits limits) {
  check_probability(q);
  std::vector<std::size_t> rows;
  rows.reserve(static_cast<std::size_t>(static_cast<double>(n) * q * 1.2) + 8);
  for (std::size_t attempt = 0; attempt <= limits.max_retries; ++attempt) {
    rows.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < q) rows.push_back(i);
    }
    if (rows.size() >= limits.min_effective && !rows.empty()) return rows;
  }
  throw Error(Errc::subsample_degenerate, "fewer than " + std::to_string(limits.min_effective) +
                                              " observations retained after " +
                                              std::to_string(limits.max_retries + 1) + " draws");
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v, double mu) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

void SubsampleConfig::validate() const {
  if (p_grid.empty()) throw Error(Errc::invalid_input, "probability grid is empty");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    check_probability(p_grid[i]);
    if (i > 0 && !(p_grid[i] > p_grid[i - 1])) {
      throw Error(Errc::invalid_input, "probability grid must be strictly increasing");
    }
  }
  if (m < 2) throw Error(Errc::invalid_input, "ensemble size must be at least 2");
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> default_p_grid() { return linspace(0.01, 0.99, 10); }

DiscreteDataset subsample(const DiscreteDataset& ds, double q, Rng& rng, SubsampleLimits limits) {
  const auto rows = draw_retained(ds.size(), q, rng, limits);
  return ds.select(rows);
}

DCorResult ensemble_dcor(const DiscreteDataset& ds, Direction direction, double q, std::size_t m,
                         const Rng& stream, SubsampleLimits limits) {
  if (m < 2) throw Error(Errc::insufficient_samples, "ensemble size must be at least 2");
  const std::size_t cause_support = direction == Direction::forward ? ds.x_support() : ds.y_support();
  const std::size_t effect_support = direction == Direction::forward ? ds.y_support() : ds.x_support();
  SampleMatrix marginals(m, cause_support);
  SampleMatrix mechanisms(m, cause_support * effect_support);
  const auto& xs = ds.x_codes();
  const auto& ys = ds.y_codes();
  for (std::size_t i = 0; i < m; ++i) {
    Rng rng = stream.derive(i);
    const auto rows = draw_retained(ds.size(), q, rng, limits);
    JointTable jt(ds.x_support(), ds.y_support());
    for (std::size_t r : rows) jt.add(xs[r], ys[r]);
    const FeaturePair f = flatten_features(jt, direction);
    std::copy(f.marginal.begin(), f.marginal.end(), marginals.row(i).begin());
    std::copy(f.conditional.begin(), f.conditional.end(), mechanisms.row(i).begin());
  }
  return distance_correlation(marginals, mechanisms);
}

double direction_score(const DiscreteDataset& ds, Direction direction, double q, std::size_t m,
                       const Rng& stream, SubsampleLimits limits) {
  return ensemble_dcor(ds, direction, q, m, stream, limits).dcor;
}

PSelection select_p(const DiscreteDataset& ds, std::size_t m, std::span<const double> grid, const Rng& stream,
                    SubsampleLimits limits) {
  if (grid.empty()) throw Error(Errc::invalid_input, "probability grid is empty");
  PSelection sel;
  std::optional<std::size_t> best_f, best_b;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    GridScore gs{grid[g], std::nullopt, std::nullopt};
    for (Direction d : {Direction::forward, Direction::backward}) {
      std::optional<double> score;
      try {
        const auto r = ensemble_dcor(ds, d, grid[g], m, stream.derive(direction_tag(d)).derive(g), limits);
        if (!r.degenerate) score = r.dcor;
      } catch (const Error& e) {
        if (e.code() != Errc::subsample_degenerate) throw;
      }
      (d == Direction::forward ? gs.forward : gs.backward) = score;
    }
    // Strict comparison keeps the smallest p among equal scores.
    if (gs.forward && (!best_f || *gs.forward < *sel.scores[*best_f].forward)) best_f = g;
    if (gs.backward && (!best_b || *gs.backward < *sel.scores[*best_b].backward)) best_b = g;
    sel.scores.push_back(gs);
  }
  if (!best_f && !best_b) throw Error(Errc::no_valid_p, "every grid point produced a degenerate ensemble");
  // A direction without any usable grid point falls back to the other one.
  sel.p_f = grid[best_f.value_or(*best_b)];
  sel.p_b = grid[best_b.value_or(*best_f)];
  sel.p_star = std::min(sel.p_f, sel.p_b);
  return sel;
}

DirectionReport infer_direction(const DiscreteDataset& ds, const SubsampleConfig& cfg) {
  cfg.validate();
  if (ds.x_support() < 2 || ds.y_support() < 2) {
    throw Error(Errc::insufficient_samples, "both variables need at least 2 categories");
  }
  const SubsampleLimits limits{cfg.min_effective, cfg.max_retries};
  const Rng root(cfg.seed);
  PSelection sel = select_p(ds, cfg.m, cfg.p_grid, root.derive(kSelectStream), limits);

  DirectionReport rep;
  const Rng final_stream = root.derive(kFinalStream);
  rep.forward_score = direction_score(ds, Direction::forward, sel.p_star, cfg.m,
                                      final_stream.derive(direction_tag(Direction::forward)), limits);
  rep.backward_score = direction_score(ds, Direction::backward, sel.p_star, cfg.m,
                                       final_stream.derive(direction_tag(Direction::backward)), limits);
  rep.p_star = sel.p_star;
  rep.p_f = sel.p_f;
  rep.p_b = sel.p_b;
  rep.decision = decide(rep.forward_score, rep.backward_score);
  rep.relative_gap = relative_gap(rep.forward_score, rep.backward_score);
  rep.per_p_scores = std::move(sel.scores);
  return rep;
}

std::vector<StabilityPoint> m_stability_curve(const DiscreteDataset& ds, double q,
                                              std::span<const std::size_t> m_values, std::size_t reps,
                                              const Rng& stream, SubsampleLimits limits) {
  if (reps == 0) throw Error(Errc::invalid_input, "reps must be positive");
  std::vector<StabilityPoint> out;
  for (std::size_t m : m_values) {
    if (m < 2) throw Error(Errc::invalid_input, "ensemble sizes must be at least 2");
    std::vector<double> fwd(reps), bwd(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const Rng rep_stream = stream.derive(m).derive(r);
      fwd[r] = direction_score(ds, Direction::forward, q, m, rep_stream.derive(0), limits);
      bwd[r] = direction_score(ds, Direction::backward, q, m, rep_stream.derive(1), limits);
    }
    StabilityPoint pt;
    pt.m = m;
    pt.forward_mean = mean(fwd);
    pt.forward_sd = sample_sd(fwd, pt.forward_mean);
    pt.backward_mean = mean(bwd);
    pt.backward_sd = sample_sd(bwd, pt.backward_mean);
    out.push_back(pt);
  }
  return out;
}

}  // namespace subdcor
