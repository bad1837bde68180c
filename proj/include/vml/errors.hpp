#pragma once

#include <stdexcept>
#include <string>

namespace vml {

// Bad input: configuration, parameters out of range, malformed tables.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

// A root solve or quadrature failed to meet its tolerance.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace vml
