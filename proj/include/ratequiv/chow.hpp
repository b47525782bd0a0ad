#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "ratequiv/config.hpp"
#include "ratequiv/cycle.hpp"
#include "ratequiv/expression.hpp"
#include "ratequiv/surface.hpp"

namespace ratequiv {

/// A linear form g = g0 X + g1 Y + g2 Z + g3 T, i.e. a point of the dual P^3.
template <typename Scalar>
class DualLinearForm {
 public:
  explicit DualLinearForm(const Vec4<Scalar>& coeffs) : coeffs_(coeffs) {
    bool zero = true;
    for (int i = 0; i < 4; ++i) zero = zero && is_zero(coeffs_(i));
    if (zero) throw std::invalid_argument("dual linear form with all coefficients zero");
  }

  const Vec4<Scalar>& coeffs() const { return coeffs_; }

  Complex operator()(const Vec4c& p) const {
    Complex acc(0);
    for (int i = 0; i < 4; ++i) acc += scalar_cast<Complex>(coeffs_(i)) * p(i);
    return acc;
  }

 private:
  Vec4<Scalar> coeffs_;
};

/// Chow polynomial of an effective 0-cycle: prod_i g(p_i)^{m_i}, with each p_i
/// in its normalized numeric representative, so the value is a definite form
/// of degree deg Z in g.
class ChowEvaluator {
 public:
  explicit ChowEvaluator(ZeroCycle z);

  const ZeroCycle& cycle() const { return z_; }
  template <typename Scalar>
  Complex operator()(const DualLinearForm<Scalar>& g) const {
    Complex acc(1);
    for (const auto& e : z_.entries()) acc *= std::pow(g(e.point.coords()), e.multiplicity);
    return acc;
  }
  /// Smallest |g(p)| / (|g| |p|) over the support; 0 when g meets the cycle.
  template <typename Scalar>
  double min_relative_factor(const DualLinearForm<Scalar>& g) const {
    double gn = 0;
    for (int i = 0; i < 4; ++i) gn += std::norm(scalar_cast<Complex>(g.coeffs()(i)));
    gn = std::sqrt(gn);
    double m = 1.0;
    for (const auto& e : z_.entries()) m = std::min(m, std::abs(g(e.point.coords())) / (gn * e.point.coords().norm()));
    return m;
  }

 private:
  ZeroCycle z_;
};

template <typename Scalar>
Complex chow_eval(const ZeroCycle& z, const DualLinearForm<Scalar>& g) {
  return ChowEvaluator(z)(g);
}

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MacaulayResult {
  enum class Path {
    /// det M with a trivial extraneous factor (all forms linear).
    determinant,
    /// det M / det M' with M' the non-reduced submatrix.
    quotient,
    /// M' was singular: the resultant of f_i + eps x_i^{d_i} interpolated at eps = 0.
    perturbed
  };
  Rational value;
  Path path = Path::determinant;
  int rows = 0;
};

std::string to_string(MacaulayResult::Path path);

/// Macaulay resultant of four forms in (X, Y, Z, T), normalized so that
/// Res(X^d0, Y^d1, Z^d2, T^d3) = 1. Throws CapacityError when the product of
/// degrees exceeds `capacity`.
MacaulayResult macaulay_resultant(const std::array<HomogeneousForm, 4>& forms, long capacity = 64);

struct StarCheckReport {
  enum class Verdict { holds, fails, degenerate };
  Verdict verdict = Verdict::degenerate;
  /// LHS / RHS at the first usable sample (g normalized to unit length).
  Complex ratio{0.0, 0.0};
  /// Largest relative deviation of a sample's ratio from `ratio`.
  double max_deviation = 0.0;
  int samples_used = 0;
  int discarded = 0;
  std::string reason;
};

std::string to_string(StarCheckReport::Verdict v);

/// Probabilistic test of Phi_X(g) Phi_{V_Y}(g) = c Phi_Y(g) Phi_{V_X}(g) for a
/// single constant c, at config.trials random integer g, where V_X and V_Y are
/// the complete intersections of the expression with F.
StarCheckReport star_check(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Rational>& expr,
                           const Surface& f, const RunConfig& config = {});
StarCheckReport star_check(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Complex>& expr,
                           const ComplexSurface& f, const RunConfig& config = {});

/// The same test given the two complete intersections directly.
StarCheckReport star_check_cycles(const ZeroCycle& x, const ZeroCycle& y, const ZeroCycle& vx,
                                  const ZeroCycle& vy, const RunConfig& config);

}  // namespace ratequiv
