#pragma once

#include <string>

namespace subdcor {

/// Shortest round-trip decimal form; "nan" and "inf" spelled out.
std::string format_number(double v);

}  // namespace subdcor
