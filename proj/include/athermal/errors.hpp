#pragma once

#include <stdexcept>
#include <string>

namespace athermal {

// Bad user-supplied configuration (unknown field, out-of-range value, ...).
// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A numeric routine failed to converge to its stated tolerance
// (e.g. quadrature node-doubling disagreement). CLI exit code 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace athermal
