#pragma once

// Straight-from-definition distance statistics used as the independent oracle
// for the library estimator. Nested vectors and explicit sums only.

#include <cmath>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

inline Rows centered(const Rows& samples) {
  const std::size_t m = samples.size();
  Rows a(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = norm_diff(samples[i], samples[j]);
  Rows out(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double row = 0.0, col = 0.0, all = 0.0;
      for (std::size_t l = 0; l < m; ++l) row += a[i][l];
      for (std::size_t l = 0; l < m; ++l) col += a[l][j];
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) all += a[k][l];
      const double md = static_cast<double>(m);
      out[i][j] = a[i][j] - row / md - col / md + all / (md * md);
    }
  }
  return out;
}

inline double dcov(const Rows& x, const Rows& y) {
  const Rows a = centered(x), b = centered(y);
  const std::size_t m = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s += a[i][j] * b[i][j];
  return s / static_cast<double>(m * m);
}

inline double dcor(const Rows& x, const Rows& y) {
  const double vx = dcov(x, x), vy = dcov(y, y);
  if (vx * vy <= 0.0) return 0.0;
  return dcov(x, y) / std::sqrt(vx * vy);
}

}  // namespace oracle
