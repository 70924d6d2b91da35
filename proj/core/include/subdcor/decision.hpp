#pragma once

#include <string_view>

namespace subdcor {

enum class Decision { x_to_y, y_to_x, tie };

std::string_view to_string(Decision d) noexcept;

/// Smaller score marks the causal direction. Exact equality is a tie.
constexpr Decision decide(double forward_score, double backward_score) noexcept {
  if (forward_score < backward_score) return Decision::x_to_y;
  if (forward_score > backward_score) return Decision::y_to_x;
  return Decision::tie;
}

/// |s_f - s_b| / max(s_f, s_b), or 0 when both are 0. Throws on negative scores.
double relative_gap(double forward_score, double backward_score);

}  // namespace subdcor
