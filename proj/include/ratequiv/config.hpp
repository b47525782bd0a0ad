#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ratequiv {

/// Reproducible run configuration shared by every operation.
struct RunConfig {
  std::uint64_t seed = 1;
  /// Root clusters closer than this (normalized coefficients) are merged.
  double cluster_tol = 1e-8;
  /// Chordal distance under which two points of a cycle are identified.
  double point_tol = 1e-7;
  /// Relative residual accepted for "lies on" / "solves" checks.
  double residual_tol = 1e-8;
  /// Mantissa bits used inside univariate root finding (53 or 64).
  int precision = 64;
  int trials = 50;
  int max_attempts = 50;

  void validate() const {
    if (!(cluster_tol > 0) || !(point_tol > 0) || !(residual_tol > 0))
      throw std::invalid_argument("tolerances must be positive");
    if (precision < 53) throw std::invalid_argument("precision must be at least 53 bits");
    if (precision > 64)
      throw std::invalid_argument("precision above 64 bits is not supported (got " +
                                  std::to_string(precision) + ")");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be positive");
  }
};

}  // namespace ratequiv
