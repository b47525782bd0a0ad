#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "ratequiv/form.hpp"
#include "ratequiv/point.hpp"

namespace ratequiv {

/// Line of P^3 spanned by two distinct points; the point s*first + u*second
/// has parameter (s : u).
template <typename Scalar>
class Line {
 public:
  Line(const ProjectivePoint<Scalar>& first, const ProjectivePoint<Scalar>& second)
      : first_(first), second_(second) {
    if (degenerate()) throw std::invalid_argument("a line needs two distinct points");
  }

  /// The line through p in direction v (v taken as a point of P^3).
  static Line through(const ProjectivePoint<Scalar>& p, const Vec4<Scalar>& direction) {
    return Line(p, ProjectivePoint<Scalar>(direction));
  }

  const ProjectivePoint<Scalar>& first() const { return first_; }
  const ProjectivePoint<Scalar>& second() const { return second_; }

  /// (p01, p02, p03, p12, p13, p23) with p_ij = P_i Q_j - P_j Q_i.
  std::array<Scalar, 6> plucker() const {
    const auto& p = first_.coords();
    const auto& q = second_.coords();
    std::array<Scalar, 6> out;
    int k = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) out[static_cast<std::size_t>(k++)] = Scalar(p(i) * q(j) - p(j) * q(i));
    return out;
  }

  static Scalar plucker_relation(const std::array<Scalar, 6>& c) {
    return Scalar(c[0] * c[5] - c[1] * c[4] + c[2] * c[3]);
  }

  Vec4<Scalar> at(const Scalar& s, const Scalar& u) const {
    Vec4<Scalar> v;
    for (int i = 0; i < 4; ++i) v(i) = Scalar(s * first_(i) + u * second_(i));
    return v;
  }

  Line<Complex> to_numeric() const { return Line<Complex>(first_.to_numeric(), second_.to_numeric()); }

 private:
  bool degenerate() const {
    auto c = plucker();
    if constexpr (std::is_same_v<Scalar, Rational>) {
      for (const auto& x : c)
        if (!is_zero(x)) return false;
      return true;
    } else {
      return chordal_distance(first_, second_) < 1e-12;
    }
  }

  ProjectivePoint<Scalar> first_, second_;
};

using RationalLine = Line<Rational>;
using ComplexLine = Line<Complex>;

/// Normalized Plücker coordinates (largest magnitude entry scaled to 1).
std::array<Complex, 6> normalized_plucker(const ComplexLine& l);

/// sin of the angle between p and the plane spanned by the line's points.
double distance_to_line(const ComplexLine& l, const Vec4c& p);

/// Two lines meet (span a 3-dimensional subspace or less) up to `tol`.
bool lines_meet(const ComplexLine& a, const ComplexLine& b, double tol);

/// Restriction f(s*first + u*second) as a binary form of degree deg f,
/// stored as the polynomial in s on the chart u = 1.
template <typename Scalar>
struct LineRestriction {
  /// coefficients[k] multiplies s^k u^(d-k).
  std::vector<Scalar> coefficients;
  /// Order of vanishing at (1 : 0), i.e. how many leading coefficients vanish.
  int infinity_multiplicity = 0;
  /// True when f vanishes identically on the line.
  bool on_surface = false;
};

template <typename Scalar>
LineRestriction<Scalar> restrict_to_line(const Form<Scalar>& f, const Line<Scalar>& l) {
  if (f.is_zero()) throw std::invalid_argument("restriction of the zero form");
  const int d = f.degree();
  const auto& p = l.first().coords();
  const auto& q = l.second().coords();
  // Coordinates X_i(s) = s*p_i + q_i; powers as dense polynomials in s.
  std::array<std::vector<std::vector<Scalar>>, 4> powers;
  for (std::size_t i = 0; i < 4; ++i) {
    auto idx = static_cast<int>(i);
    powers[i].push_back({Scalar(1)});
    for (int k = 1; k <= d; ++k) {
      const auto& prev = powers[i].back();
      std::vector<Scalar> next(prev.size() + 1, Scalar(0));
      for (std::size_t j = 0; j < prev.size(); ++j) {
        next[j] = Scalar(next[j] + prev[j] * q(idx));
        next[j + 1] = Scalar(next[j + 1] + prev[j] * p(idx));
      }
      powers[i].push_back(std::move(next));
    }
  }
  LineRestriction<Scalar> out;
  out.coefficients.assign(static_cast<std::size_t>(d) + 1, Scalar(0));
  for (const auto& [e, c] : f.terms()) {
    std::vector<Scalar> term{c};
    for (std::size_t i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      const auto& pw = powers[i][static_cast<std::size_t>(e[i])];
      std::vector<Scalar> next(term.size() + pw.size() - 1, Scalar(0));
      for (std::size_t a = 0; a < term.size(); ++a)
        for (std::size_t b = 0; b < pw.size(); ++b) next[a + b] = Scalar(next[a + b] + term[a] * pw[b]);
      term = std::move(next);
    }
    for (std::size_t k = 0; k < term.size(); ++k)
      out.coefficients[k] = Scalar(out.coefficients[k] + term[k]);
  }
  if constexpr (std::is_same_v<Scalar, Rational>) {
    int top = d;
    while (top >= 0 && is_zero(out.coefficients[static_cast<std::size_t>(top)])) --top;
    out.on_surface = top < 0;
    out.infinity_multiplicity = out.on_surface ? 0 : d - top;
  } else {
    // Numeric data: vanishing relative to the size f can take on the line.
    double scale = 0.0;
    for (const auto& [e, c] : f.terms()) scale += std::abs(c);
    double pn = 0.0, qn = 0.0;
    for (int i = 0; i < 4; ++i) {
      pn = std::max(pn, std::abs(p(i)));
      qn = std::max(qn, std::abs(q(i)));
    }
    scale *= std::pow(pn + qn, d);
    const double tol = 1e-11 * scale;
    int top = d;
    while (top >= 0 && std::abs(out.coefficients[static_cast<std::size_t>(top)]) <= tol) --top;
    out.on_surface = top < 0;
    out.infinity_multiplicity = out.on_surface ? 0 : d - top;
  }
  return out;
}

}  // namespace ratequiv
