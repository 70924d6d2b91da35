#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <fstream>
#include <set>

#include "subdcor/empirical.hpp"
#include "subdcor/synth.hpp"

using namespace subdcor;

namespace {

GeneratorSpec spec_for(Family f, std::size_t x, std::size_t y, std::size_t n, std::uint64_t seed) {
  GeneratorSpec s;
  s.family = f;
  s.x_support = x;
  s.y_support = y;
  s.n = n;
  s.seed = seed;
  return s;
}

void expect_row_stochastic(const GroundTruthDataset& g) {
  double sx = 0.0;
  for (double v : g.pmf_x) {
    EXPECT_GE(v, 0.0);
    sx += v;
  }
  EXPECT_NEAR(sx, 1.0, 1e-12);
  for (std::size_t r = 0; r < g.mechanism.rows(); ++r) {
    double s = 0.0;
    for (double v : g.mechanism.row(r)) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

/// Total variation between the empirical cause distribution and pmf_x; labels are cause indices.
double tv_cause(const GroundTruthDataset& g) {
  const auto& ds = g.dataset;
  std::vector<double> emp(g.pmf_x.size(), 0.0);
  for (auto c : ds.x_codes()) emp[std::stoul(ds.x_labels()[c])] += 1.0 / static_cast<double>(ds.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < emp.size(); ++i) tv += std::abs(emp[i] - g.pmf_x[i]);
  return tv / 2.0;
}

}  // namespace

TEST(Exp1Original, FourCategoriesAreUniform) {
  Rng rng(1);
  const auto g = gen_exp1_original(spec_for(Family::exp1_original, 4, 4, 100, 0), rng);
  for (double v : g.pmf_x) EXPECT_DOUBLE_EQ(v, 0.25);
  expect_row_stochastic(g);
}

TEST(Exp1Original, ManyRepeatedProbabilities) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto g = gen_exp1_original(spec_for(Family::exp1_original, 30, 30, 10, seed), rng);
    const std::set<double> distinct(g.pmf_x.begin(), g.pmf_x.end());
    EXPECT_LE(distinct.size(), 7u);
    EXPECT_LT(distinct.size(), g.pmf_x.size());
  }
}

TEST(Exp1Original, SampleMatchesCausePmf) {
  Rng rng(3);
  const auto g = gen_exp1_original(spec_for(Family::exp1_original, 8, 8, 2000, 0), rng);
  EXPECT_LE(tv_cause(g), 0.05);
}

TEST(Exp1Original, RejectsSmallSupport) {
  Rng rng(1);
  EXPECT_THROW(gen_exp1_original(spec_for(Family::exp1_original, 3, 4, 10, 0), rng), Error);
}

TEST(Exp1Modified, NoiselessIsInjectiveMap) {
  auto spec = spec_for(Family::exp1_modified, 6, 9, 500, 0);
  spec.noise_support = {0};
  Rng rng(2);
  const auto g = gen_exp1_modified(spec, rng);
  std::set<std::int64_t> image(g.f.begin(), g.f.end());
  EXPECT_EQ(image.size(), 6u);
  const auto& ds = g.dataset;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto x = std::stoul(ds.x_labels()[ds.x_codes()[i]]);
    EXPECT_EQ(std::stol(ds.y_labels()[ds.y_codes()[i]]), g.f[x]);
  }
}

TEST(Exp1Modified, ModWrapsOntoFullEffectSupport) {
  Rng rng(3);
  const auto spec = spec_for(Family::exp1_modified, 20, 20, 2000, 0);
  const auto g = gen_exp1_modified(spec, rng);
  std::set<std::int64_t> reachable;
  for (auto fx : g.f)
    for (auto n : spec.noise_support) reachable.insert(((fx + n) % 20 + 20) % 20);
  EXPECT_EQ(reachable.size(), 20u);
  std::size_t nonzero_cols = 0;
  for (std::size_t c = 0; c < g.mechanism.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < g.mechanism.rows(); ++r) s += g.mechanism(r, c);
    nonzero_cols += s > 0.0;
  }
  EXPECT_EQ(nonzero_cols, reachable.size());
  EXPECT_LE(g.dataset.y_support(), 20u);
  expect_row_stochastic(g);
}

TEST(Exp1Modified, ConditionalIsShiftedNoise) {
  Rng rng(4);
  const auto spec = spec_for(Family::exp1_modified, 5, 7, 100000, 0);
  const auto g = gen_exp1_modified(spec, rng);
  const auto& ds = g.dataset;
  std::vector<std::vector<double>> counts(5, std::vector<double>(7, 0.0));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    counts[std::stoul(ds.x_labels()[ds.x_codes()[i]])][std::stoul(ds.y_labels()[ds.y_codes()[i]])] += 1.0;
  }
  for (std::size_t x = 0; x < 5; ++x) {
    double row = 0.0;
    for (double c : counts[x]) row += c;
    if (row < 2000) continue;
    std::vector<double> expected(7, 0.0);
    for (std::size_t k = 0; k < spec.noise_support.size(); ++k) {
      expected[static_cast<std::size_t>(((g.f[x] + spec.noise_support[k]) % 7 + 7) % 7)] += g.noise_pmf[k];
    }
    double tv = 0.0;
    for (std::size_t y = 0; y < 7; ++y) tv += std::abs(counts[x][y] / row - expected[y]);
    EXPECT_LE(tv / 2.0, 0.02) << "x=" << x;
  }
}

TEST(Exp1Modified, NeedsInjection) {
  Rng rng(1);
  EXPECT_THROW(gen_exp1_modified(spec_for(Family::exp1_modified, 6, 5, 10, 0), rng), Error);
}

TEST(Exp2Original, FourCategoriesShareOneRow) {
  Rng rng(5);
  const auto g = gen_exp2_original(spec_for(Family::exp2_original, 4, 6, 500, 0), rng);
  for (std::size_t r = 1; r < 4; ++r) {
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(g.mechanism(r, c), g.mechanism(0, c));
  }
  expect_row_stochastic(g);
}

TEST(Exp2Original, AtMostReferenceSetRows) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto g = gen_exp2_original(spec_for(Family::exp2_original, 30, 12, 50, 0), rng);
    std::set<std::vector<double>> rows;
    for (std::size_t r = 0; r < 30; ++r) rows.insert({g.mechanism.row(r).begin(), g.mechanism.row(r).end()});
    EXPECT_LE(rows.size(), 7u);
    expect_row_stochastic(g);
  }
}

TEST(Exp2Modified, RowsDistinctAndCausePositive) {
  Rng rng(6);
  const auto g = gen_exp2_modified(spec_for(Family::exp2_modified, 15, 10, 100, 0), rng);
  std::set<std::vector<double>> rows;
  for (std::size_t r = 0; r < 15; ++r) rows.insert({g.mechanism.row(r).begin(), g.mechanism.row(r).end()});
  EXPECT_EQ(rows.size(), 15u);
  for (double v : g.pmf_x) EXPECT_GT(v, 0.0);
  expect_row_stochastic(g);
}

TEST(Exp2Modified, EmpiricalJointClose) {
  Rng rng(7);
  const auto g = gen_exp2_modified(spec_for(Family::exp2_modified, 5, 5, 100000, 0), rng);
  const auto& ds = g.dataset;
  std::vector<double> emp(25, 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    emp[std::stoul(ds.x_labels()[ds.x_codes()[i]]) * 5 + std::stoul(ds.y_labels()[ds.y_codes()[i]])] += 1e-5;
  }
  double tv = 0.0;
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = 0; y < 5; ++y) tv += std::abs(emp[x * 5 + y] - g.pmf_x[x] * g.mechanism(x, y));
  EXPECT_LE(tv / 2.0, 0.02);
}

TEST(Generate, SeedDeterminismAllFamilies) {
  for (Family f : {Family::exp1_original, Family::exp1_modified, Family::exp2_original, Family::exp2_modified}) {
    const auto spec = spec_for(f, 8, 8, 300, 42);
    const auto a = generate(spec), b = generate(spec);
    EXPECT_EQ(a.dataset.x_codes(), b.dataset.x_codes());
    EXPECT_EQ(a.dataset.y_codes(), b.dataset.y_codes());
    EXPECT_EQ(a.truth, Decision::x_to_y);
    EXPECT_LE(a.dataset.x_support(), 8u);
  }
}

TEST(SampleDataset, OneHotMechanismIsDeterministic) {
  const std::vector<double> px{0.2, 0.5, 0.3};
  const auto mech = Matrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  Rng rng(8);
  const auto ds = sample_dataset(px, mech, 500, rng);
  const std::vector<std::string> g{"2", "0", "1"};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(ds.y_labels()[ds.y_codes()[i]], g[std::stoul(ds.x_labels()[ds.x_codes()[i]])]);
  }
}

TEST(SampleDataset, Rejections) {
  const std::vector<double> px{0.5, 0.5};
  const auto mech = Matrix::from_rows({{1, 0}, {0, 1}});
  Rng rng(1);
  EXPECT_THROW(sample_dataset(px, mech, 0, rng), Error);
  const std::vector<double> bad{0.5, 0.6};
  EXPECT_THROW(sample_dataset(bad, mech, 10, rng), Error);
  EXPECT_THROW(sample_dataset(px, Matrix::from_rows({{0.5, 0.6}, {0, 1}}), 10, rng), Error);
}

TEST(SampleDataset, ChiSquareGoodnessOfFit) {
  const std::vector<double> px{0.1, 0.3, 0.6};
  const auto mech = Matrix::from_rows({{0.25, 0.25, 0.25, 0.25}, {0.7, 0.1, 0.1, 0.1}, {0.05, 0.15, 0.3, 0.5}});
  const boost::math::chi_squared dist(11.0);
  int passed = 0;
  const Rng root(2024);
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng = root.derive(seed);
    const auto ds = sample_dataset(px, mech, 100000, rng);
    const auto jt = joint_counts(ds);
    ASSERT_EQ(jt.x_support(), 3u);
    ASSERT_EQ(jt.y_support(), 4u);
    double stat = 0.0;
    for (std::size_t x = 0; x < 3; ++x) {
      for (std::size_t y = 0; y < 4; ++y) {
        const double e = 100000.0 * px[x] * mech(x, y);
        const double d = static_cast<double>(jt(x, y)) - e;
        stat += d * d / e;
      }
    }
    passed += boost::math::cdf(boost::math::complement(dist, stat)) > 0.001;
  }
  EXPECT_GE(passed, 99);
}

TEST(Serialization, PairFileAndMetadata) {
  const auto spec = spec_for(Family::exp2_modified, 4, 5, 50, 9);
  const auto g = generate(spec);
  const std::string path = ::testing::TempDir() + "synth_pair.txt";
  write_pair_file(g.dataset, path);
  write_metadata(spec, g, path + ".meta.json");
  std::ifstream in(path);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 50u);
  std::ifstream meta(path + ".meta.json");
  const std::string text((std::istreambuf_iterator<char>(meta)), {});
  EXPECT_NE(text.find("\"family\": \"exp2-modified\""), std::string::npos);
  EXPECT_NE(text.find("\"truth\": \"x->y\""), std::string::npos);
}
