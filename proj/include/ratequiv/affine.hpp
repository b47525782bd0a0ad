#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "ratequiv/form.hpp"
#include "ratequiv/point.hpp"

namespace ratequiv {

/// Exponents of the affine chart variables (x, y, z) = (X/T, Y/T, Z/T), or of
/// direction variables (a, b, c) for Taylor parts.
using AffineExponent = std::array<int, 3>;

/// Polynomial in three affine variables, graded by total degree.
template <typename Scalar>
class AffinePolynomial {
 public:
  using Terms = std::map<AffineExponent, Scalar, std::greater<AffineExponent>>;

  static AffinePolynomial constant(const Scalar& c) {
    AffinePolynomial p;
    p.add_term({0, 0, 0}, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  Scalar coefficient(const AffineExponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const AffineExponent& e, const Scalar& c) {
    if (ratequiv::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      Scalar sum = it->second + c;
      if (ratequiv::is_zero(sum))
        terms_.erase(it);
      else
        it->second = sum;
    }
  }

  AffinePolynomial homogeneous_part(int degree) const {
    AffinePolynomial out;
    for (const auto& [e, c] : terms_)
      if (e[0] + e[1] + e[2] == degree) out.add_term(e, c);
    return out;
  }

  template <typename T>
  T operator()(const Vec3<T>& v) const {
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast<T>(c);
      for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k < e[i]; ++k) term = T(term * v(static_cast<int>(i)));
      acc = T(acc + term);
    }
    return acc;
  }

  template <typename To>
  AffinePolynomial<To> cast() const {
    AffinePolynomial<To> out;
    for (const auto& [e, c] : terms_) out.add_term(e, scalar_cast<To>(c));
    return out;
  }

  double max_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, magnitude(c));
    return m;
  }

  AffinePolynomial& operator+=(const AffinePolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  AffinePolynomial& operator*=(const Scalar& s) {
    if (ratequiv::is_zero(s)) terms_.clear();
    for (auto& [e, c] : terms_) c = Scalar(c * s);
    return *this;
  }
  friend AffinePolynomial operator+(AffinePolynomial a, const AffinePolynomial& b) { return a += b; }
  friend AffinePolynomial operator-(AffinePolynomial a, const AffinePolynomial& b) {
    AffinePolynomial nb = b;
    nb *= Scalar(-1);
    return a += nb;
  }
  friend AffinePolynomial operator*(const AffinePolynomial& a, const AffinePolynomial& b) {
    AffinePolynomial out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, Scalar(ca * cb));
    return out;
  }
  friend bool operator==(const AffinePolynomial& a, const AffinePolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

/// f(x, y, z, 1).
template <typename Scalar>
AffinePolynomial<Scalar> dehomogenize(const Form<Scalar>& f) {
  AffinePolynomial<Scalar> out;
  for (const auto& [e, c] : f.terms()) out.add_term({e[0], e[1], e[2]}, c);
  return out;
}

/// g(p + v) as a polynomial in v, by binomial expansion of each monomial.
template <typename Scalar>
AffinePolynomial<Scalar> shift(const AffinePolynomial<Scalar>& g, const Vec3<Scalar>& p) {
  AffinePolynomial<Scalar> out;
  for (const auto& [e, c] : g.terms()) {
    // Per-variable expansions (p_k + v_k)^{e_k} = sum_l C(e_k, l) p_k^{e_k - l} v_k^l.
    std::array<std::vector<Scalar>, 3> parts;
    for (std::size_t k = 0; k < 3; ++k) {
      const int n = e[k];
      std::vector<Scalar> pw(static_cast<std::size_t>(n) + 1, Scalar(1));
      for (int j = 1; j <= n; ++j)
        pw[static_cast<std::size_t>(j)] = Scalar(pw[static_cast<std::size_t>(j - 1)] * p(static_cast<int>(k)));
      Integer binom = 1;
      for (int l = 0; l <= n; ++l) {
        parts[k].push_back(Scalar(scalar_cast<Scalar>(Rational(binom)) * pw[static_cast<std::size_t>(n - l)]));
        binom = binom * (n - l) / (l + 1);
      }
    }
    for (int l = 0; l <= e[0]; ++l)
      for (int m = 0; m <= e[1]; ++m)
        for (int n = 0; n <= e[2]; ++n)
          out.add_term({l, m, n}, Scalar(c * parts[0][static_cast<std::size_t>(l)] *
                                         parts[1][static_cast<std::size_t>(m)] *
                                         parts[2][static_cast<std::size_t>(n)]));
  }
  return out;
}

/// The degree-i Taylor part (f_i)_p of f at p, a form in the direction
/// variables (a, b, c) on the chart T != 0. Summing over i and evaluating
/// at (x, y, z) - p reproduces the dehomogenization of f.
template <typename Scalar>
AffinePolynomial<Scalar> taylor_part(const Form<Scalar>& f, const ProjectivePoint<Scalar>& p, int i) {
  if (f.is_zero()) throw std::invalid_argument("taylor_part of the zero form");
  if (i < 0) throw std::invalid_argument("negative Taylor order");
  if (!p.on_chart()) throw ChartError("taylor_part needs a point with T != 0");
  return shift(dehomogenize(f), p.affine()).homogeneous_part(i);
}

/// All Taylor parts 0..deg f at once.
template <typename Scalar>
std::vector<AffinePolynomial<Scalar>> taylor_parts(const Form<Scalar>& f, const ProjectivePoint<Scalar>& p) {
  if (!p.on_chart()) throw ChartError("taylor_parts needs a point with T != 0");
  AffinePolynomial<Scalar> g = shift(dehomogenize(f), p.affine());
  std::vector<AffinePolynomial<Scalar>> out;
  for (int i = 0; i <= f.degree(); ++i) out.push_back(g.homogeneous_part(i));
  return out;
}

}  // namespace ratequiv
