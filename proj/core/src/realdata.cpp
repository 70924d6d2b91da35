#include "subdcor/realdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "subdcor/csv.hpp"
#include "subdcor/error.hpp"

namespace subdcor {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t decimal_digits(std::string_view token) {
  const auto dot = token.find('.');
  if (dot == std::string_view::npos) return 0;
  std::size_t n = 0;
  for (std::size_t i = dot + 1; i < token.size() && std::isdigit(static_cast<unsigned char>(token[i])); ++i) ++n;
  return n;
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size() && std::isfinite(out);
}

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

RawPair load_pair(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  RawPair pair;
  pair.id = stem_of(path);
  const std::size_t needed = std::max(options.columns.cause, options.columns.effect) + 1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && options.skip_header) continue;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() < std::max<std::size_t>(needed, 2)) {
      throw Error(Errc::format, path + ":" + std::to_string(line_no) + ": expected at least " +
                                    std::to_string(std::max<std::size_t>(needed, 2)) + " columns, found " +
                                    std::to_string(tokens.size()));
    }
    std::vector<double> row(tokens.size());
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      if (!parse_double(tokens[c], row[c])) {
        throw Error(Errc::parse, path + ":" + std::to_string(line_no) + ": not a finite number: '" +
                                     std::string(tokens[c]) + "'");
      }
      if (c == options.columns.cause || c == options.columns.effect) {
        pair.max_decimal_digits = std::max(pair.max_decimal_digits, decimal_digits(tokens[c]));
      }
    }
    pair.x.push_back(row[options.columns.cause]);
    pair.y.push_back(row[options.columns.effect]);
  }
  if (pair.x.empty()) throw Error(Errc::format, path + ": no observations");
  return pair;
}

std::map<std::string, ColumnRoles> load_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  std::map<std::string, ColumnRoles> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    std::size_t cause = 0, effect = 0;
    const auto bad = [&] {
      return Error(Errc::parse, path + ":" + std::to_string(line_no) + ": expected 'pair-id cause-column effect-column'");
    };
    if (tokens.size() != 3) throw bad();
    auto r1 = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), cause);
    auto r2 = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), effect);
    if (r1.ec != std::errc() || r2.ec != std::errc() || cause == 0 || effect == 0 || cause == effect) throw bad();
    out[std::string(tokens[0])] = ColumnRoles{cause - 1, effect - 1};
  }
  return out;
}

std::vector<std::int64_t> quantize(std::span<const double> values, int k) {
  if (k < 0) throw Error(Errc::invalid_input, "resolution must be nonnegative");
  const double scale = std::pow(10.0, k);
  constexpr double limit = 9.2e18;
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(Errc::quantization, "non-finite value");
    double scaled = v * scale;
    // Decimal inputs such as 0.285 land just below the half after scaling.
    const double half = std::floor(scaled) + 0.5;
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(scaled));
    if (std::abs(scaled - half) <= tol) scaled = half;
    const double r = std::round(scaled);
    if (!(std::abs(r) < limit)) throw Error(Errc::quantization, "value " + format_number(v) + " overflows at k=" + std::to_string(k));
    out.push_back(static_cast<std::int64_t>(r));
  }
  return out;
}

Eligibility eligibility(std::size_t support_x, std::size_t support_y, const PreprocessSpec& spec) {
  if (spec.max_support < 2) throw Error(Errc::invalid_input, "max_support must be at least 2");
  const std::size_t diff = support_x > support_y ? support_x - support_y : support_y - support_x;
  Eligibility e;
  e.support_x = support_x;
  e.support_y = support_y;
  e.eligible = support_x >= 2 && support_y >= 2 && support_x < spec.max_support && support_y < spec.max_support &&
               diff <= spec.support_equality_tolerance;
  return e;
}

Eligibility eligibility(std::span<const std::int64_t> x, std::span<const std::int64_t> y, const PreprocessSpec& spec) {
  const std::set<std::int64_t> sx(x.begin(), x.end()), sy(y.begin(), y.end());
  return eligibility(sx.size(), sy.size(), spec);
}

DiscreteDataset discretize(const RawPair& pair, int k) {
  const auto qx = quantize(pair.x, k);
  const auto qy = quantize(pair.y, k);
  return encode_columns<std::int64_t>(qx, qy);
}

ScanResult resolution_scan(const RawPair& pair, std::span<const int> k_values, const PreprocessSpec& spec,
                           const SubsampleConfig& cfg) {
  if (k_values.empty()) throw Error(Errc::invalid_input, "no resolutions given");
  ScanResult scan;
  scan.pair_id = pair.id;
  for (int k : k_values) {
    ScanRow row;
    row.k = k;
    const DiscreteDataset ds = discretize(pair, k);
    row.support = eligibility(ds.x_support(), ds.y_support(), spec);
    if (row.support.eligible) {
      row.report = infer_direction(ds, cfg);
    }
    scan.rows.push_back(std::move(row));
  }
  summarize(scan);
  return scan;
}

void summarize(ScanResult& scan) {
  std::set<Decision> seen;
  for (const auto& row : scan.rows) {
    if (row.support.eligible && row.report) seen.insert(row.report->decision);
  }
  scan.any_eligible = !seen.empty();
  scan.stable = seen.size() == 1;
  scan.decision = scan.stable ? *seen.begin() : Decision::tie;
}

void write_scan_csv(std::span<const ScanResult> scans, std::ostream& out) {
  out << "pair_id,k,support_x,support_y,eligible,s_f,s_b,relative_gap,decision,stable\n";
  for (const auto& scan : scans) {
    for (const auto& row : scan.rows) {
      out << scan.pair_id << ',' << row.k << ',' << row.support.support_x << ',' << row.support.support_y << ','
          << (row.support.eligible ? 1 : 0) << ',';
      if (row.report) {
        out << format_number(row.report->forward_score) << ',' << format_number(row.report->backward_score) << ','
            << format_number(row.report->relative_gap) << ',' << to_string(row.report->decision);
      } else {
        out << ",,,";
      }
      out << ',' << (scan.stable ? 1 : 0) << '\n';
    }
  }
}

}  // namespace subdcor
