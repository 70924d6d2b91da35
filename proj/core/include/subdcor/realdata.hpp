#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subdcor/decision.hpp"
#include "subdcor/empirical.hpp"
#include "subdcor/subsampling.hpp"

namespace subdcor {

struct ColumnRoles {
  /// Zero-based column indices.
  std::size_t cause = 0;
  std::size_t effect = 1;
};

struct RawPair {
  std::string id;
  std::vector<double> x;
  std::vector<double> y;
  /// Set when roles came from metadata; x is then the known cause.
  std::optional<ColumnRoles> roles;
  /// Largest count of digits after the decimal point seen in the source text.
  std::size_t max_decimal_digits = 0;
};

struct LoadOptions {
  bool skip_header = false;
  ColumnRoles columns{};
};

/// Whitespace-separated numeric rows. Blank lines are ignored.
RawPair load_pair(const std::string& path, const LoadOptions& options = {});

/// Metadata lines: `pair-id cause-column effect-column` with 1-based columns.
std::map<std::string, ColumnRoles> load_metadata(const std::string& path);

/// round(10^k * v) with halves rounded away from zero.
std::vector<std::int64_t> quantize(std::span<const double> values, int k);

struct PreprocessSpec {
  int k = 0;
  std::size_t max_support = 50;
  std::size_t support_equality_tolerance = 5;
};

struct Eligibility {
  bool eligible = false;
  std::size_t support_x = 0;
  std::size_t support_y = 0;
};

Eligibility eligibility(std::size_t support_x, std::size_t support_y, const PreprocessSpec& spec);
Eligibility eligibility(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                        const PreprocessSpec& spec);

/// Quantizes both columns at resolution k and encodes them.
DiscreteDataset discretize(const RawPair& pair, int k);

struct ScanRow {
  int k = 0;
  Eligibility support;
  /// Present for eligible resolutions only.
  std::optional<DirectionReport> report;
};

struct ScanResult {
  std::string pair_id;
  std::vector<ScanRow> rows;
  /// False when no resolution was eligible.
  bool any_eligible = false;
  /// All eligible decisions agree.
  bool stable = false;
  Decision decision = Decision::tie;
};

/// Recomputes any_eligible, stable and decision from the rows.
void summarize(ScanResult& scan);

ScanResult resolution_scan(const RawPair& pair, std::span<const int> k_values, const PreprocessSpec& spec,
                           const SubsampleConfig& cfg);

/// CSV with columns pair_id,k,support_x,support_y,eligible,s_f,s_b,relative_gap,decision,stable.
void write_scan_csv(std::span<const ScanResult> scans, std::ostream& out);

}  // namespace subdcor
