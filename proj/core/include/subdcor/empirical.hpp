#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "subdcor/error.hpp"
#include "subdcor/matrix.hpp"

namespace subdcor {

enum class Axis { x, y };

/// forward tests x -> y, backward tests y -> x.
enum class Direction { forward, backward };

/// Paired observations as category indices plus the labels of each index.
///
/// Labels are listed in index order, which is ascending raw-value order of the
/// data the dataset was encoded from.
class DiscreteDataset {
 public:
  DiscreteDataset() = default;
  DiscreteDataset(std::vector<std::uint32_t> x_codes, std::vector<std::uint32_t> y_codes,
                  std::vector<std::string> x_labels, std::vector<std::string> y_labels);

  std::size_t size() const noexcept { return x_codes_.size(); }
  std::size_t x_support() const noexcept { return x_labels_.size(); }
  std::size_t y_support() const noexcept { return y_labels_.size(); }

  const std::vector<std::uint32_t>& x_codes() const noexcept { return x_codes_; }
  const std::vector<std::uint32_t>& y_codes() const noexcept { return y_codes_; }
  const std::vector<std::string>& x_labels() const noexcept { return x_labels_; }
  const std::vector<std::string>& y_labels() const noexcept { return y_labels_; }

  /// Same categories, only the observations at `rows` (in that order).
  DiscreteDataset select(std::span<const std::size_t> rows) const;
  /// Swaps the roles of x and y.
  DiscreteDataset transposed() const;

 private:
  std::vector<std::uint32_t> x_codes_;
  std::vector<std::uint32_t> y_codes_;
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
};

namespace detail {

template <class T>
std::string label_of(const T& value) {
  if constexpr (std::is_convertible_v<T, std::string>) {
    return std::string(value);
  } else {
    std::ostringstream os;
    if constexpr (std::is_floating_point_v<T>) os.precision(std::numeric_limits<T>::max_digits10);
    os << value;
    return os.str();
  }
}

template <class T>
std::pair<std::vector<std::uint32_t>, std::vector<std::string>> encode_column(
    std::span<const std::pair<T, T>> pairs, bool first) {
  std::map<T, std::uint32_t> index;
  for (const auto& p : pairs) index.emplace(first ? p.first : p.second, 0);
  std::vector<std::string> labels;
  labels.reserve(index.size());
  std::uint32_t next = 0;
  for (auto& [value, code] : index) {
    code = next++;
    labels.push_back(label_of(value));
  }
  std::vector<std::uint32_t> codes;
  codes.reserve(pairs.size());
  for (const auto& p : pairs) codes.push_back(index.at(first ? p.first : p.second));
  return {std::move(codes), std::move(labels)};
}

}  // namespace detail

/// Assigns category indices in ascending raw-value order.
template <class T>
DiscreteDataset encode(std::span<const std::pair<T, T>> pairs) {
  if (pairs.empty()) throw Error(Errc::invalid_input, "cannot encode an empty sequence");
  auto [xc, xl] = detail::encode_column(pairs, true);
  auto [yc, yl] = detail::encode_column(pairs, false);
  return DiscreteDataset(std::move(xc), std::move(yc), std::move(xl), std::move(yl));
}

template <class T>
DiscreteDataset encode(const std::vector<std::pair<T, T>>& pairs) {
  return encode(std::span<const std::pair<T, T>>(pairs));
}

/// Encodes two equal-length columns.
template <class T>
DiscreteDataset encode_columns(std::span<const T> x, std::span<const T> y) {
  if (x.size() != y.size()) throw Error(Errc::invalid_input, "column lengths differ");
  std::vector<std::pair<T, T>> pairs;
  pairs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) pairs.emplace_back(x[i], y[i]);
  return encode(std::span<const std::pair<T, T>>(pairs));
}

/// |X| x |Y| contingency counts.
class JointTable {
 public:
  JointTable(std::size_t x_support, std::size_t y_support);
  JointTable(std::size_t x_support, std::size_t y_support, std::vector<std::uint64_t> counts);

  std::size_t x_support() const noexcept { return x_support_; }
  std::size_t y_support() const noexcept { return y_support_; }
  std::uint64_t total() const noexcept { return total_; }

  std::uint64_t operator()(std::size_t i, std::size_t j) const { return counts_[i * y_support_ + j]; }
  void add(std::size_t i, std::size_t j, std::uint64_t count = 1);

  JointTable transposed() const;

  bool operator==(const JointTable&) const = default;

 private:
  std::size_t x_support_;
  std::size_t y_support_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct Supports {
  std::size_t x;
  std::size_t y;
};

JointTable joint_counts(const DiscreteDataset& ds);
/// Supports may exceed the categories present in `ds`.
JointTable joint_counts(const DiscreteDataset& ds, Supports fixed);

std::vector<double> marginal(const JointTable& jt, Axis axis);

/// Row i is the conditional pmf given category i of `given`. Categories with
/// zero count give an all-zeros row.
Matrix conditional(const JointTable& jt, Axis given);

struct FeaturePair {
  /// Marginal of the putative cause.
  std::vector<double> marginal;
  /// Row-major flattening of the putative mechanism p(effect | cause).
  std::vector<double> conditional;
};

FeaturePair flatten_features(const JointTable& jt, Direction direction);

}  // namespace subdcor
