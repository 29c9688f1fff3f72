// Exception types raised by the numerical kernels.

#pragma once

#include <stdexcept>
#include <string>

namespace sqbell {

/// Adaptive quadrature hit its depth or interval cap before reaching the
/// requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lattice sum reached its index cap before the tail fell below the
/// block tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqbell
