#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "subdcor");
  std::ostringstream out, err;
  const int code = subdcor::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, SynthThenInfer) {
  const auto pair = tmp("cli_pair.txt");
  auto r = run({"synth", "exp1-modified", "--seed", "5", "--support", "8", "--out", pair});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(pair + ".meta.json").find("exp1-modified"), std::string::npos);

  r = run({"infer", pair, "--seed", "1", "--q-grid", "0.1,0.9,3", "--m", "20", "--out", tmp("cli_infer.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"decision=", "s_f=", "s_b=", "p_star=", "relative_gap="}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
  const auto csv = slurp(tmp("cli_infer.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);

  const auto again = run({"infer", pair, "--seed", "1", "--q-grid", "0.1,0.9,3", "--m", "20", "--out", tmp("cli_infer2.csv")});
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(slurp(tmp("cli_infer2.csv")), csv);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"bench", "--seed", "1", "--n-datasets", "0"}).code, 2);
  EXPECT_EQ(run({"bench", "--n-datasets", "3"}).code, 2);
  EXPECT_EQ(run({"bench", "--seed", "1", "--bogus-flag"}).code, 2);
  EXPECT_EQ(run({"infer", tmp("cli_pair.txt"), "--seed", "1", "--q", "0.5", "--q-grid", "0.1,0.2,2"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RuntimeFailure) {
  const auto path = tmp("cli_header.txt");
  std::ofstream(path) << "a b\n1 2\n";
  const auto r = run({"infer", path, "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("parse-error"), std::string::npos);
}

TEST(Cli, BenchDeterministicCsv) {
  const std::vector<std::string> base{"bench", "--seed", "9", "--family", "exp2-modified", "--support", "4,6",
                                      "--n-datasets", "3", "--n-samples", "200", "--m", "8", "--q-grid", "0.3,0.7,2"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", tmp("bench_a.csv")});
  b.insert(b.end(), {"--out", tmp("bench_b.csv"), "--threads", "3"});
  const auto ra = run(a), rb = run(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(slurp(tmp("bench_a.csv")), slurp(tmp("bench_b.csv")));
  EXPECT_EQ(ra.out, rb.out);
  const auto csv = slurp(tmp("bench_a.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Cli, McurveRowCount) {
  const auto r = run({"mcurve", "--family", "exp1-modified", "--support", "6", "--n-samples", "400", "--seed", "2",
                      "--q", "0.5", "--m-values", "4,8,16", "--reps", "3", "--out", tmp("mcurve.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(tmp("mcurve.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,forward_mean,forward_sd,backward_mean,backward_sd");
}

TEST(Cli, PairsScan) {
  const auto dir = tmp("cli_pairs_dir");
  std::filesystem::create_directories(dir);
  ASSERT_EQ(run({"synth", "exp2-modified", "--seed", "3", "--support", "5", "--n-samples", "300", "--out",
                 dir + "/pair0001.txt"}).code, 0);
  std::ofstream(dir + "/pair0001_des.txt") << "description\n";
  std::ofstream(dir + "/meta.dat") << "pair0001 1 2\n";
  const auto r = run({"pairs", dir, "--seed", "4", "--k", "0,1", "--m", "10", "--q", "0.5", "--meta",
                      dir + "/meta.dat", "--out", tmp("pairs.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("pairs=1"), std::string::npos);
  const auto csv = slurp(tmp("pairs.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
