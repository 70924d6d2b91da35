#include "subdcor/empirical.hpp"

#include <string>

namespace subdcor {

DiscreteDataset::DiscreteDataset(std::vector<std::uint32_t> x_codes, std::vector<std::uint32_t> y_codes,
                                 std::vector<std::string> x_labels, std::vector<std::string> y_labels)
    : x_codes_(std::move(x_codes)),
      y_codes_(std::move(y_codes)),
      x_labels_(std::move(x_labels)),
      y_labels_(std::move(y_labels)) {
  if (x_codes_.size() != y_codes_.size()) throw Error(Errc::invalid_input, "code sequences differ in length");
  if (x_labels_.empty() || y_labels_.empty()) throw Error(Errc::invalid_input, "empty category dictionary");
  for (std::size_t i = 0; i < x_codes_.size(); ++i) {
    if (x_codes_[i] >= x_labels_.size() || y_codes_[i] >= y_labels_.size()) {
      throw Error(Errc::invalid_input, "code out of range at observation " + std::to_string(i));
    }
  }
}

DiscreteDataset DiscreteDataset::select(std::span<const std::size_t> rows) const {
  DiscreteDataset out;
  out.x_labels_ = x_labels_;
  out.y_labels_ = y_labels_;
  out.x_codes_.reserve(rows.size());
  out.y_codes_.reserve(rows.size());
  for (std::size_t r : rows) {
    out.x_codes_.push_back(x_codes_.at(r));
    out.y_codes_.push_back(y_codes_.at(r));
  }
  return out;
}

DiscreteDataset DiscreteDataset::transposed() const {
  DiscreteDataset out;
  out.x_codes_ = y_codes_;
  out.y_codes_ = x_codes_;
  out.x_labels_ = y_labels_;
  out.y_labels_ = x_labels_;
  return out;
}

JointTable::JointTable(std::size_t x_support, std::size_t y_support)
    : x_support_(x_support), y_support_(y_support), counts_(x_support * y_support, 0) {}

JointTable::JointTable(std::size_t x_support, std::size_t y_support, std::vector<std::uint64_t> counts)
    : x_support_(x_support), y_support_(y_support), counts_(std::move(counts)) {
  if (counts_.size() != x_support * y_support) throw Error(Errc::invalid_input, "count table has wrong size");
  for (auto c : counts_) total_ += c;
}

void JointTable::add(std::size_t i, std::size_t j, std::uint64_t count) {
  counts_[i * y_support_ + j] += count;
  total_ += count;
}

JointTable JointTable::transposed() const {
  JointTable t(y_support_, x_support_);
  for (std::size_t i = 0; i < x_support_; ++i) {
    for (std::size_t j = 0; j < y_support_; ++j) t.add(j, i, (*this)(i, j));
  }
  return t;
}

JointTable joint_counts(const DiscreteDataset& ds) { return joint_counts(ds, {ds.x_support(), ds.y_support()}); }

JointTable joint_counts(const DiscreteDataset& ds, Supports fixed) {
  JointTable jt(fixed.x, fixed.y);
  const auto& xs = ds.x_codes();
  const auto& ys = ds.y_codes();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] >= fixed.x || ys[k] >= fixed.y) {
      throw Error(Errc::invalid_input, "code outside fixed support at observation " + std::to_string(k));
    }
    jt.add(xs[k], ys[k]);
  }
  return jt;
}

std::vector<double> marginal(const JointTable& jt, Axis axis) {
  if (jt.total() == 0) throw Error(Errc::empty_table, "marginal of an empty table");
  const std::size_t size = axis == Axis::x ? jt.x_support() : jt.y_support();
  std::vector<double> p(size, 0.0);
  for (std::size_t i = 0; i < jt.x_support(); ++i) {
    for (std::size_t j = 0; j < jt.y_support(); ++j) p[axis == Axis::x ? i : j] += static_cast<double>(jt(i, j));
  }
  const double total = static_cast<double>(jt.total());
  for (auto& v : p) v /= total;
  return p;
}

Matrix conditional(const JointTable& jt, Axis given) {
  if (jt.total() == 0) throw Error(Errc::empty_table, "conditional of an empty table");
  const bool on_x = given == Axis::x;
  const std::size_t rows = on_x ? jt.x_support() : jt.y_support();
  const std::size_t cols = on_x ? jt.y_support() : jt.x_support();
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t row_total = 0;
    for (std::size_t c = 0; c < cols; ++c) row_total += on_x ? jt(r, c) : jt(c, r);
    if (row_total == 0) continue;
    const double denom = static_cast<double>(row_total);
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = static_cast<double>(on_x ? jt(r, c) : jt(c, r)) / denom;
  }
  return out;
}

FeaturePair flatten_features(const JointTable& jt, Direction direction) {
  const Axis cause = direction == Direction::forward ? Axis::x : Axis::y;
  FeaturePair f;
  f.marginal = marginal(jt, cause);
  const Matrix cond = conditional(jt, cause);
  f.conditional.assign(cond.values().begin(), cond.values().end());
  return f;
}

}  // namespace subdcor
