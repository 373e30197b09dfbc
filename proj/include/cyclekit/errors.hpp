#pragma once

#include <stdexcept>
#include <string>

namespace cyclekit {

// Validation failures: arguments or input data outside an operation's domain.
// The CLI maps these to exit code 2.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input (CSV/JSON); messages carry a 1-based row number.
struct parse_error : validation_error {
  using validation_error::validation_error;
};

// Wrong container length (too short, mismatched).
struct size_error : validation_error {
  using validation_error::validation_error;
};

// Value outside the mathematical domain of the operation.
struct domain_error : validation_error {
  using validation_error::validation_error;
};

// Non-uniform or non-increasing time axis.
struct spacing_error : validation_error {
  using validation_error::validation_error;
};

// Sampling-theorem violations (Nyquist).
struct sampling_error : validation_error {
  using validation_error::validation_error;
};

// A requested window or year lies outside the available span.
struct range_error : validation_error {
  using validation_error::validation_error;
};

// Inconsistent configuration (e.g. overlapping cycle bands).
struct config_error : validation_error {
  using validation_error::validation_error;
};

// Filesystem/stream failures. The CLI maps these to exit code 1.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cyclekit
