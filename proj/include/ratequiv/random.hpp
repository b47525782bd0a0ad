#pragma once

#include <cstdint>
#include <random>

#include "ratequiv/form.hpp"
#include "ratequiv/point.hpp"

namespace ratequiv {

/// Every random choice in a run is drawn from one of these, seeded from
/// RunConfig::seed. The helpers below avoid std distributions so that streams
/// do not depend on the standard library implementation.
using Rng = std::mt19937_64;

inline long random_int(Rng& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

/// Uniform in [0, 1).
inline double random_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Complex random_phase(Rng& rng) {
  double theta = 6.283185307179586 * random_unit(rng);
  return {std::cos(theta), std::sin(theta)};
}

inline Complex random_complex(Rng& rng) {
  return {2.0 * random_unit(rng) - 1.0, 2.0 * random_unit(rng) - 1.0};
}

/// Nonzero integer in [-height, height].
inline long random_nonzero_int(Rng& rng, long height) {
  long v = random_int(rng, 1, height);
  return (rng() & 1) ? v : -v;
}

/// Dense form with integer coefficients in [-height, height].
HomogeneousForm random_form(Rng& rng, int degree, long height = 9);

/// Point with small integer coordinates, all nonzero (generic chart position).
RationalPoint random_point(Rng& rng, long height = 9);

/// Random form of the given degree forced through all `points` by adjusting
/// coefficients of a few monomials (exact linear solve).
HomogeneousForm random_form_through(Rng& rng, int degree, const std::vector<RationalPoint>& points,
                                    long height = 9);

}  // namespace ratequiv
