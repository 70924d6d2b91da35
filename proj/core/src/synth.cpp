#include "subdcor/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <string>

#include <json.hpp>

#include "subdcor/error.hpp"

namespace subdcor {
namespace {

constexpr double kPmfTolerance = 1e-9;

std::vector<std::int64_t> iota_values(std::size_t n) {
  std::vector<std::int64_t> v(n);
  std::iota(v.begin(), v.end(), std::int64_t{0});
  return v;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_spec, what);
}

void check_family(const GeneratorSpec& spec, Family expected) {
  require(spec.family == expected, "generator called with a spec for family " + std::string(to_string(spec.family)));
  spec.validate();
}

GroundTruthDataset finish(const GeneratorSpec& spec, GroundTruthDataset g, Rng& rng) {
  g.dataset = sample_dataset(g.pmf_x, g.mechanism, spec.n, rng, g.y_values);
  g.truth = Decision::x_to_y;
  return g;
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::exp1_original: return "exp1-original";
    case Family::exp1_modified: return "exp1-modified";
    case Family::exp2_original: return "exp2-original";
    case Family::exp2_modified: return "exp2-modified";
  }
  return "exp1-modified";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::exp1_original, Family::exp1_modified, Family::exp2_original, Family::exp2_modified}) {
    if (to_string(f) == name) return f;
  }
  throw Error(Errc::invalid_spec, "unknown family '" + std::string(name) + "'");
}

std::vector<std::int64_t> default_noise_support() { return {-2, -1, 0, 1, 2}; }

void GeneratorSpec::validate() const {
  require(x_support >= 2 && y_support >= 2, "supports must be at least 2");
  require(n >= 1, "sample count must be positive");
  const bool additive = family == Family::exp1_original || family == Family::exp1_modified;
  if (additive) {
    require(!noise_support.empty(), "noise support is empty");
    require(std::set<std::int64_t>(noise_support.begin(), noise_support.end()).size() == noise_support.size(),
            "noise support has repeated values");
  }
  if (family == Family::exp1_original || family == Family::exp2_original) {
    require(x_support >= 4, "integer-weight families need |X| >= 4");
  }
  if (family == Family::exp1_modified) require(x_support <= y_support, "an injection needs |X| <= |Y0|");
}

std::vector<double> integer_pmf(std::size_t length, std::int64_t hi, Rng& rng) {
  std::vector<double> p(length);
  double total = 0.0;
  for (auto& v : p) {
    v = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(hi)));
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

std::vector<double> uniform_pmf(std::size_t length, Rng& rng) {
  std::vector<double> p(length);
  double total = 0.0;
  for (auto& v : p) {
    v = 1.0 - rng.uniform();  // (0, 1]
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

GroundTruthDataset gen_exp1_original(const GeneratorSpec& spec, Rng& rng) {
  check_family(spec, Family::exp1_original);
  const auto hi = static_cast<std::int64_t>(spec.x_support / 4);
  GroundTruthDataset g;
  g.pmf_x = integer_pmf(spec.x_support, hi, rng);
  g.f.resize(spec.x_support);
  for (auto& v : g.f) v = static_cast<std::int64_t>(rng.below(spec.y_support));
  g.noise_pmf = integer_pmf(spec.noise_support.size(), hi, rng);

  const auto [nlo, nhi] = std::minmax_element(spec.noise_support.begin(), spec.noise_support.end());
  const std::int64_t y_lo = *nlo;
  const std::int64_t y_hi = static_cast<std::int64_t>(spec.y_support) - 1 + *nhi;
  g.y_values.resize(static_cast<std::size_t>(y_hi - y_lo + 1));
  std::iota(g.y_values.begin(), g.y_values.end(), y_lo);
  g.mechanism = Matrix(spec.x_support, g.y_values.size());
  for (std::size_t x = 0; x < spec.x_support; ++x) {
    for (std::size_t k = 0; k < spec.noise_support.size(); ++k) {
      g.mechanism(x, static_cast<std::size_t>(g.f[x] + spec.noise_support[k] - y_lo)) += g.noise_pmf[k];
    }
  }
  return finish(spec, std::move(g), rng);
}

GroundTruthDataset gen_exp1_modified(const GeneratorSpec& spec, Rng& rng) {
  check_family(spec, Family::exp1_modified);
  GroundTruthDataset g;
  g.pmf_x = uniform_pmf(spec.x_support, rng);
  g.noise_pmf = uniform_pmf(spec.noise_support.size(), rng);

  auto image = iota_values(spec.y_support);
  for (std::size_t i = image.size(); i > 1; --i) std::swap(image[i - 1], image[rng.below(i)]);
  g.f.assign(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(spec.x_support));

  const auto modulus = static_cast<std::int64_t>(spec.y_support);
  g.y_values = iota_values(spec.y_support);
  g.mechanism = Matrix(spec.x_support, spec.y_support);
  for (std::size_t x = 0; x < spec.x_support; ++x) {
    for (std::size_t k = 0; k < spec.noise_support.size(); ++k) {
      g.mechanism(x, static_cast<std::size_t>(floor_mod(g.f[x] + spec.noise_support[k], modulus))) += g.noise_pmf[k];
    }
  }
  return finish(spec, std::move(g), rng);
}

GroundTruthDataset gen_exp2_original(const GeneratorSpec& spec, Rng& rng) {
  check_family(spec, Family::exp2_original);
  const auto hi = static_cast<std::int64_t>(spec.x_support / 4);
  GroundTruthDataset g;
  g.pmf_x = integer_pmf(spec.x_support, hi, rng);
  std::vector<std::vector<double>> reference(spec.x_support / 4);
  for (auto& pmf : reference) pmf = integer_pmf(spec.y_support, hi, rng);
  g.y_values = iota_values(spec.y_support);
  g.mechanism = Matrix(spec.x_support, spec.y_support);
  for (std::size_t x = 0; x < spec.x_support; ++x) {
    const auto& pick = reference[rng.below(reference.size())];
    std::copy(pick.begin(), pick.end(), g.mechanism.row(x).begin());
  }
  return finish(spec, std::move(g), rng);
}

GroundTruthDataset gen_exp2_modified(const GeneratorSpec& spec, Rng& rng) {
  check_family(spec, Family::exp2_modified);
  GroundTruthDataset g;
  g.pmf_x = uniform_pmf(spec.x_support, rng);
  g.y_values = iota_values(spec.y_support);
  g.mechanism = Matrix(spec.x_support, spec.y_support);
  for (std::size_t x = 0; x < spec.x_support; ++x) {
    const auto row = uniform_pmf(spec.y_support, rng);
    std::copy(row.begin(), row.end(), g.mechanism.row(x).begin());
  }
  return finish(spec, std::move(g), rng);
}

GroundTruthDataset generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::exp1_original: return gen_exp1_original(spec, rng);
    case Family::exp1_modified: return gen_exp1_modified(spec, rng);
    case Family::exp2_original: return gen_exp2_original(spec, rng);
    case Family::exp2_modified: return gen_exp2_modified(spec, rng);
  }
  throw Error(Errc::invalid_spec, "unknown family");
}

namespace {

std::vector<double> checked_cdf(std::span<const double> pmf, const std::string& what) {
  std::vector<double> cdf(pmf.size());
  double total = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    require(std::isfinite(pmf[i]) && pmf[i] >= 0.0, what + " has a negative or non-finite entry");
    total += pmf[i];
    cdf[i] = total;
  }
  require(std::abs(total - 1.0) <= kPmfTolerance, what + " does not sum to 1");
  return cdf;
}

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

DiscreteDataset sample_dataset(std::span<const double> pmf_x, const Matrix& mechanism, std::size_t n, Rng& rng,
                               std::span<const std::int64_t> y_values) {
  require(n >= 1, "sample count must be positive");
  require(!pmf_x.empty(), "cause pmf is empty");
  require(mechanism.rows() == pmf_x.size(), "mechanism needs one row per cause category");
  require(y_values.empty() || y_values.size() == mechanism.cols(), "effect labels do not match mechanism columns");
  const auto cdf_x = checked_cdf(pmf_x, "cause pmf");
  std::vector<std::vector<double>> cdf_rows;
  cdf_rows.reserve(mechanism.rows());
  for (std::size_t x = 0; x < mechanism.rows(); ++x) {
    cdf_rows.push_back(checked_cdf(mechanism.row(x), "mechanism row " + std::to_string(x)));
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs(n);
  for (auto& p : pairs) {
    const std::size_t x = draw(cdf_x, rng);
    const std::size_t y = draw(cdf_rows[x], rng);
    p = {static_cast<std::int64_t>(x), y_values.empty() ? static_cast<std::int64_t>(y) : y_values[y]};
  }
  return encode(pairs);
}

void write_pair_file(const DiscreteDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out << ds.x_labels()[ds.x_codes()[i]] << ' ' << ds.y_labels()[ds.y_codes()[i]] << '\n';
  }
  if (!out) throw Error(Errc::io, "failed writing '" + path + "'");
}

void write_metadata(const GeneratorSpec& spec, const GroundTruthDataset& data, const std::string& path) {
  nlohmann::ordered_json j;
  j["family"] = to_string(spec.family);
  j["x_support"] = spec.x_support;
  j["y_support"] = spec.y_support;
  if (spec.family == Family::exp1_original || spec.family == Family::exp1_modified) {
    j["noise_support"] = spec.noise_support;
  }
  j["n"] = spec.n;
  j["seed"] = spec.seed;
  j["truth"] = to_string(data.truth);
  j["observed_support_x"] = data.dataset.x_support();
  j["observed_support_y"] = data.dataset.y_support();
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::io, "failed writing '" + path + "'");
}

}  // namespace subdcor
