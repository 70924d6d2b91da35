#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subdcor {

enum class Errc {
  invalid_input,
  insufficient_samples,
  empty_table,
  subsample_degenerate,
  no_valid_p,
  invalid_spec,
  parse,
  format,
  quantization,
  io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace subdcor
