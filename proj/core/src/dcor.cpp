#include "subdcor/dcor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subdcor/error.hpp"

namespace subdcor {

Matrix pairwise_distances(const SampleMatrix& samples) {
  const std::size_t m = samples.rows();
  for (double v : samples.values()) {
    if (!std::isfinite(v)) throw Error(Errc::invalid_input, "non-finite sample value");
  }
  Matrix dist(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = samples.row(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto b = samples.row(j);
      double sq = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sq += d * d;
      }
      const double d = std::sqrt(sq);
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

CenteredDistanceMatrix double_center(const Matrix& dist) {
  if (!dist.square()) {
    throw Error(Errc::invalid_input, "double centering needs a square matrix, got " +
                                         std::to_string(dist.rows()) + "x" + std::to_string(dist.cols()));
  }
  const std::size_t m = dist.rows();
  std::vector<double> row_mean(m, 0.0), col_mean(m, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row_mean[i] += dist(i, j);
      col_mean[j] += dist(i, j);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(m);
    col_mean[i] /= static_cast<double>(m);
  }
  if (m > 0) grand /= static_cast<double>(m) * static_cast<double>(m);

  Matrix centered(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) centered(i, j) = dist(i, j) - row_mean[i] - col_mean[j] + grand;
  }
  return {std::move(centered)};
}

namespace {

double mean_product(const Matrix& a, const Matrix& b) {
  const auto av = a.values();
  const auto bv = b.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < av.size(); ++k) sum += av[k] * bv[k];
  const double m = static_cast<double>(a.rows());
  // The V-statistic is nonnegative; clip rounding noise.
  return std::max(0.0, sum / (m * m));
}

void check_pair(const SampleMatrix& x, const SampleMatrix& y) {
  if (x.rows() != y.rows()) {
    throw Error(Errc::invalid_input, "sample counts differ: " + std::to_string(x.rows()) + " vs " +
                                         std::to_string(y.rows()));
  }
  if (x.rows() < 2) throw Error(Errc::insufficient_samples, "distance statistics need at least 2 samples");
  if (x.cols() == 0 || y.cols() == 0) throw Error(Errc::invalid_input, "zero-dimensional samples");
}

}  // namespace

double distance_covariance(const SampleMatrix& x, const SampleMatrix& y) {
  check_pair(x, y);
  const auto a = double_center(pairwise_distances(x));
  const auto b = double_center(pairwise_distances(y));
  return mean_product(a.values, b.values);
}

DCorResult distance_correlation(const SampleMatrix& x, const SampleMatrix& y) {
  check_pair(x, y);
  const auto a = double_center(pairwise_distances(x));
  const auto b = double_center(pairwise_distances(y));
  DCorResult r;
  r.dcov = mean_product(a.values, b.values);
  r.dvar_x = mean_product(a.values, a.values);
  r.dvar_y = mean_product(b.values, b.values);
  const double denom = r.dvar_x * r.dvar_y;
  if (denom > 0.0) {
    r.dcor = std::clamp(r.dcov / std::sqrt(denom), 0.0, 1.0);
  } else {
    r.degenerate = true;
    r.dcor = 0.0;
  }
  return r;
}

}  // namespace subdcor
