#pragma once

#include <stdexcept>
#include <string>

namespace asymptolim {

/// Invalid input: bad arguments, dimension mismatches, domain violations.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure could not meet its target (quadrature budget
/// exhausted, variation did not stabilize, non-finite values).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asymptolim
