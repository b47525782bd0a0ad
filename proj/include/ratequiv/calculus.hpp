#pragma once

#include <stdexcept>

#include "ratequiv/config.hpp"
#include "ratequiv/cycle.hpp"
#include "ratequiv/expression.hpp"
#include "ratequiv/line.hpp"
#include "ratequiv/surface.hpp"

namespace ratequiv {

/// The two lines do not lie in a common plane.
class SkewLinesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExpressionVerdict {
  bool holds = false;
  /// (X - Y) - (V_X - V_Y); empty exactly when the expression holds.
  ZeroCycle residual;
  ZeroCycle vx, vy;
};

/// Checks X - Y = [{a = h = f = 0}] - [{b = h = f = 0}] under cycle_eq at
/// config.point_tol. Improper intersections propagate as
/// ImproperIntersectionError; unequal degrees are an invalid_argument.
ExpressionVerdict verify_expression(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Rational>& expr,
                                    const Surface& f, const RunConfig& config = {});
ExpressionVerdict verify_expression(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Complex>& expr,
                                    const ComplexSurface& f, const RunConfig& config = {});

/// For coplanar distinct lines: h is their common plane, and {a = h = 0} = L1,
/// {b = h = 0} = L2. Exact coefficients are scaled to primitive integers.
CIExpression<Rational> lines_to_expression(const RationalLine& l1, const RationalLine& l2);
CIExpression<Complex> lines_to_expression(const ComplexLine& l1, const ComplexLine& l2);

/// (a g, b g, h). Throws ImproperIntersectionError when {g = h = f = 0} is not
/// finite.
CIExpression<Rational> nesting_rule_2(const CIExpression<Rational>& expr, const HomogeneousForm& g,
                                      const Surface& f, const RunConfig& config = {});
CIExpression<Complex> nesting_rule_2(const CIExpression<Complex>& expr, const ComplexForm& g,
                                     const ComplexSurface& f, const RunConfig& config = {});

/// (a, b, h c^rr) with c = alpha a + beta b. Throws ImproperIntersectionError
/// when {a = b = f = 0} is not finite or when c is a multiple of a or b.
CIExpression<Rational> nesting_rule_3(const CIExpression<Rational>& expr, int rr, const Rational& alpha,
                                      const Rational& beta, const Surface& f, const RunConfig& config = {});
CIExpression<Complex> nesting_rule_3(const CIExpression<Complex>& expr, int rr, const Complex& alpha,
                                     const Complex& beta, const ComplexSurface& f, const RunConfig& config = {});
/// Pencil parameters drawn from the run seed (both nonzero).
CIExpression<Rational> nesting_rule_3(const CIExpression<Rational>& expr, int rr, const Surface& f,
                                      const RunConfig& config = {});

/// V_X - V_Y of both expressions agree under cycle_eq.
bool same_difference(const CIExpression<Rational>& e1, const CIExpression<Rational>& e2, const Surface& f,
                     const RunConfig& config = {});
bool same_difference(const CIExpression<Complex>& e1, const CIExpression<Complex>& e2, const ComplexSurface& f,
                     const RunConfig& config = {});

struct DegreeMatch {
  /// Common multidegree reached by both sides.
  MultiDegree common;
  /// Rule-2 degrees t and rule-3 multipliers r, one per input.
  long t1 = 0, t2 = 0, r1 = 0, r2 = 0;
  /// The primes s + t.
  long p1 = 0, p2 = 0;
  /// Final rule-2 padding bringing s + t up to common.s.
  long pad1 = 0, pad2 = 0;
  /// Inputs were equal and returned unchanged.
  bool identity = false;
};

/// Positive t, r with e1 + r1 (s1 + t1) = e2 + r2 (s2 + t2), where s_i + t_i
/// are distinct primes; the smallest primes and the smallest Bezout shift
/// making both r positive are chosen.
DegreeMatch match_multidegrees(const MultiDegree& m1, const MultiDegree& m2);

}  // namespace ratequiv
