#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subdcor/decision.hpp"
#include "subdcor/empirical.hpp"
#include "subdcor/matrix.hpp"
#include "subdcor/rng.hpp"

namespace subdcor {

enum class Family { exp1_original, exp1_modified, exp2_original, exp2_modified };

std::string_view to_string(Family f) noexcept;
/// Accepts the names produced by to_string. Throws invalid_spec otherwise.
Family parse_family(std::string_view name);

std::vector<std::int64_t> default_noise_support();

struct GeneratorSpec {
  Family family = Family::exp1_modified;
  std::size_t x_support = 20;
  /// |Y0| for the additive-noise families, |Y| for the mechanism families.
  std::size_t y_support = 20;
  /// Noise values, additive-noise families only.
  std::vector<std::int64_t> noise_support = default_noise_support();
  std::size_t n = 2000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GroundTruthDataset {
  DiscreteDataset dataset;
  Decision truth = Decision::x_to_y;
  std::vector<double> pmf_x;
  /// Row x is p(y | x) over the raw effect values in `y_values`.
  Matrix mechanism;
  std::vector<std::int64_t> y_values;
  /// Cause-to-Y0 map (additive-noise families only).
  std::vector<std::int64_t> f;
  /// pmf over spec.noise_support (additive-noise families only).
  std::vector<double> noise_pmf;
};

/// Normalized vector of i.i.d. uniform integers in [1, hi].
std::vector<double> integer_pmf(std::size_t length, std::int64_t hi, Rng& rng);
/// Normalized vector of i.i.d. Uniform[0, 1] draws.
std::vector<double> uniform_pmf(std::size_t length, Rng& rng);

GroundTruthDataset gen_exp1_original(const GeneratorSpec& spec, Rng& rng);
GroundTruthDataset gen_exp1_modified(const GeneratorSpec& spec, Rng& rng);
GroundTruthDataset gen_exp2_original(const GeneratorSpec& spec, Rng& rng);
GroundTruthDataset gen_exp2_modified(const GeneratorSpec& spec, Rng& rng);

/// Dispatches on spec.family using Rng(spec.seed).
GroundTruthDataset generate(const GeneratorSpec& spec);

/// n ancestral draws x ~ pmf_x, y ~ mechanism row x. Cause labels are the
/// indices of pmf_x; effect labels are y_values (defaults to column indices).
DiscreteDataset sample_dataset(std::span<const double> pmf_x, const Matrix& mechanism, std::size_t n,
                               Rng& rng, std::span<const std::int64_t> y_values = {});

/// Writes the two-column pair format, one observation per line.
void write_pair_file(const DiscreteDataset& ds, const std::string& path);
/// JSON record of family, spec, seed and ground truth.
void write_metadata(const GeneratorSpec& spec, const GroundTruthDataset& data, const std::string& path);

}  // namespace subdcor
