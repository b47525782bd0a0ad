#pragma once

#include <utility>
#include <vector>

#include "ratequiv/scalar.hpp"

namespace ratequiv {

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
using QPoly = std::vector<Rational>;

void trim(QPoly& p);
int degree(const QPoly& p);
QPoly derivative(const QPoly& p);
QPoly multiply(const QPoly& a, const QPoly& b);
/// Quotient and remainder of a by a nonzero b.
std::pair<QPoly, QPoly> divide(const QPoly& a, const QPoly& b);
/// Monic greatest common divisor; the zero polynomial when both vanish.
QPoly gcd(QPoly a, QPoly b);
/// Yun's decomposition p = c * prod_k P_k^k with squarefree, pairwise coprime
/// P_k; entry k-1 holds P_k (possibly constant 1).
std::vector<QPoly> squarefree_decomposition(const QPoly& p);
Rational evaluate(const QPoly& p, const Rational& x);

}  // namespace ratequiv
