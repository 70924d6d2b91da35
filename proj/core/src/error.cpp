#include "subdcor/error.hpp"

namespace subdcor {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::insufficient_samples: return "insufficient-samples";
    case Errc::empty_table: return "empty-table";
    case Errc::subsample_degenerate: return "subsample-degenerate";
    case Errc::no_valid_p: return "no-valid-p";
    case Errc::invalid_spec: return "invalid-spec";
    case Errc::parse: return "parse-error";
    case Errc::format: return "format-error";
    case Errc::quantization: return "quantization-error";
    case Errc::io: return "io-error";
  }
  return "unknown";
}

}  // namespace subdcor
