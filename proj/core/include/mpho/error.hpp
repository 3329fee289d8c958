#pragma once

#include <stdexcept>
#include <string>

namespace mpho {

enum class errc {
  missing_face,
  duplicate_simplex,
  empty_simplex,
  not_nested,
  missing_vertex_value,
  nonpositive_bandwidth,
  length_mismatch,
  dimension_mismatch,
  complex_mismatch,
  not_surjective,
  size_mismatch,
  non_increasing,
  ground_space_mismatch,
  infinite_cost,
  non_finite_gradient,
  incompatible_loss,
  parse_error,
  config_error,
  too_large,
};

const char* errc_name(errc code);

/// Library-wide exception. `code()` identifies the failed precondition or
/// invariant; the message carries the offending data.
class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

/// Non-fatal diagnostics (degenerate edges, schedule warnings) go through
/// here so tests and the CLI can silence or capture them.
void warn(const std::string& message);
void set_warning_handler(void (*handler)(const std::string&));

} // namespace mpho
