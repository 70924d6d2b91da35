#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "subdcor/subsampling.hpp"
#include "subdcor/synth.hpp"

namespace subdcor {

enum class Method { sub, dc };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);

struct BenchmarkSpec {
  /// Family and noise support; supports and n are overwritten per cell.
  GeneratorSpec generator;
  std::vector<std::size_t> support_sizes;
  std::size_t n_datasets = 100;
  std::size_t n_samples = 2000;
  std::vector<Method> methods{Method::sub, Method::dc};
  /// Grid, m and retry limits; the seed is replaced per replication.
  SubsampleConfig subsample;
  std::uint64_t master_seed = 0;
  /// Accuracy credit for a tie.
  double tie_credit = 0.5;
  std::size_t threads = 1;
  bool record_timing = false;

  void validate() const;
};

struct AccuracyCell {
  Method method = Method::sub;
  std::size_t support = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t ties = 0;
  std::size_t failures = 0;
  double accuracy = 0.0;
  /// Over replications that produced scores.
  double mean_relative_gap = 0.0;
  double seconds = 0.0;
};

struct AccuracyReport {
  std::vector<AccuracyCell> cells;
};

AccuracyReport run_benchmark(const BenchmarkSpec& spec);

/// method,support_size,accuracy,mean_relative_gap,ties,failures,seconds
void emit_report(const AccuracyReport& report, std::ostream& out);
void emit_report(const AccuracyReport& report, const std::string& path);

}  // namespace subdcor
