#pragma once

#include <stdexcept>
#include <string>

namespace levytail {

// Requested moment does not exist (e.g. second moment of a power law with
// tail exponent <= 2).  Distances that need it raise this instead of
// silently returning the pole value.
class InfiniteMomentError : public std::domain_error {
 public:
  explicit InfiniteMomentError(const std::string& what) : std::domain_error(what) {}
};

// Adaptive quadrature could not reach the requested tolerance within its
// evaluation budget.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace levytail
