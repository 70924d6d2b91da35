#include "subdcor/decision.hpp"

#include <algorithm>
#include <cmath>

#include "subdcor/error.hpp"

namespace subdcor {

std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::x_to_y: return "x->y";
    case Decision::y_to_x: return "y->x";
    case Decision::tie: return "tie";
  }
  return "tie";
}

double relative_gap(double forward_score, double backward_score) {
  if (!(forward_score >= 0.0) || !(backward_score >= 0.0)) {
    throw Error(Errc::invalid_input, "relative gap needs nonnegative scores");
  }
  const double hi = std::max(forward_score, backward_score);
  if (hi == 0.0) return 0.0;
  return std::abs(forward_score - backward_score) / hi;
}

}  // namespace subdcor
