#pragma once
#include <stdexcept>
#include <string>

namespace polylab {

// Bad inputs / out-of-domain evaluation.
struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A solver or quadrature failed to converge within budget.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polylab
