#pragma once

#include "subdcor/matrix.hpp"

namespace subdcor {

/// Double-centered distance matrix: a_ij - row mean - column mean + grand mean.
struct CenteredDistanceMatrix {
  Matrix values;
};

struct DCorResult {
  double dcov = 0.0;
  double dvar_x = 0.0;
  double dvar_y = 0.0;
  double dcor = 0.0;
  /// Set when dvar_x * dvar_y == 0; dcor is reported as 0.
  bool degenerate = false;
};

/// Euclidean distances between all pairs of rows. Throws on non-finite input.
Matrix pairwise_distances(const SampleMatrix& samples);

CenteredDistanceMatrix double_center(const Matrix& dist);

/// (1/m^2) sum_ij A_ij B_ij over the centered distance matrices of x and y.
double distance_covariance(const SampleMatrix& x, const SampleMatrix& y);

/// Normalized empirical distance covariance: dcov / sqrt(dvar_x * dvar_y).
DCorResult distance_correlation(const SampleMatrix& x, const SampleMatrix& y);

}  // namespace subdcor
