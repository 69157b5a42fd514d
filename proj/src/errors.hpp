#pragma once

#include <stdexcept>
#include <string>

namespace hypersim {

// Error categories, mirrored one-to-one by the C API status codes and the
// CLI exit codes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when every amplitude of a run has been heralded away and there is
// no conditional state left to report.
struct GateAbort : std::runtime_error {
  explicit GateAbort(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypersim
