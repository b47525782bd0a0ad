#pragma once

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ratequiv/scalar.hpp"

namespace ratequiv {

/// Exponents of X, Y, Z, T in that order.
using Exponent = std::array<int, 4>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2] + e[3]; }

/// All exponent tuples of total degree `degree`, descending lexicographic.
std::vector<Exponent> monomials_of_degree(int degree);

/// Homogeneous polynomial in the variables (X, Y, Z, T).
///
/// Terms are kept in a sparse exponent map ordered X^d first. Zero
/// coefficients are never stored, and every stored exponent sums to
/// degree(). A zero form still carries a degree so that products and sums
/// with it stay graded.
template <typename Scalar>
class Form {
 public:
  using Terms = std::map<Exponent, Scalar, std::greater<Exponent>>;

  Form() = default;
  explicit Form(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("form degree must be non-negative");
  }

  static Form constant(const Scalar& c) {
    Form f(0);
    f.add_term({0, 0, 0, 0}, c);
    return f;
  }
  static Form variable(int index) {
    Form f(1);
    Exponent e{0, 0, 0, 0};
    e.at(static_cast<std::size_t>(index)) = 1;
    f.add_term(e, Scalar(1));
    return f;
  }
  static Form linear(const Vec4<Scalar>& coeffs) {
    Form f(1);
    for (int i = 0; i < 4; ++i) {
      Exponent e{0, 0, 0, 0};
      e[static_cast<std::size_t>(i)] = 1;
      f.add_term(e, coeffs(i));
    }
    return f;
  }
  static Form monomial(const Exponent& e, const Scalar& c) {
    Form f(total_degree(e));
    f.add_term(e, c);
    return f;
  }

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Exponent& e, const Scalar& c) {
    if (total_degree(e) != degree_)
      throw std::invalid_argument("monomial degree does not match form degree");
    for (int k : e)
      if (k < 0) throw std::invalid_argument("negative exponent");
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

  /// Evaluates at v; coefficients are converted into the point's scalar type.
  template <typename T>
  T operator()(const Vec4<T>& v) const {
    std::array<std::vector<T>, 4> powers;
    for (int i = 0; i < 4; ++i) {
      auto& row = powers[static_cast<std::size_t>(i)];
      row.reserve(static_cast<std::size_t>(degree_) + 1);
      row.push_back(T(1));
      for (int k = 1; k <= degree_; ++k) row.push_back(T(row.back() * v(i)));
    }
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast<T>(c);
      for (std::size_t i = 0; i < 4; ++i)
        if (e[i] > 0) term = term * powers[i][static_cast<std::size_t>(e[i])];
      acc = acc + term;
    }
    return acc;
  }

  Form derivative(int var) const {
    const auto idx = static_cast<std::size_t>(var);
    Form out(degree_ > 0 ? degree_ - 1 : 0);
    if (degree_ == 0) return out;
    for (const auto& [e, c] : terms_) {
      if (e[idx] == 0) continue;
      Exponent d = e;
      --d[idx];
      out.add_term(d, Scalar(c * Scalar(e[idx])));
    }
    return out;
  }

  std::array<Form, 4> gradient() const {
    return {derivative(0), derivative(1), derivative(2), derivative(3)};
  }

  /// Sum_i q_i * df/dX_i.
  Form directional_derivative(const Vec4<Scalar>& q) const {
    Form out(degree_ > 0 ? degree_ - 1 : 0);
    for (int i = 0; i < 4; ++i)
      if (!ratequiv::is_zero(q(i))) out += derivative(i) * q(i);
    return out;
  }

  template <typename To>
  Form<To> cast() const {
    Form<To> out(degree_);
    for (const auto& [e, c] : terms_) out.add_term(e, scalar_cast<To>(c));
    return out;
  }

  double max_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, magnitude(c));
    return m;
  }

  Form& operator+=(const Form& other) {
    if (other.is_zero()) return *this;
    if (is_zero() && degree_ != other.degree_) {
      *this = other;
      return *this;
    }
    if (other.degree_ != degree_)
      throw std::invalid_argument("cannot add forms of different degrees");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }
  Form& operator-=(const Form& other) { return *this += -other; }
  Form& operator*=(const Scalar& s) {
    if (ratequiv::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c = Scalar(c * s);
    return *this;
  }

  Form operator-() const {
    Form out = *this;
    for (auto& [e, c] : out.terms_) c = Scalar(-c);
    return out;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }

  friend Form operator*(const Form& a, const Form& b) {
    Form out(a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
        out.add_term(e, Scalar(ca * cb));
      }
    return out;
  }

  friend bool operator==(const Form& a, const Form& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  int degree_ = 0;
  Terms terms_;
};

using HomogeneousForm = Form<Rational>;
using ComplexForm = Form<Complex>;

template <typename Scalar>
Form<Scalar> pow(const Form<Scalar>& f, int k) {
  if (k < 0) throw std::invalid_argument("negative power of a form");
  Form<Scalar> out = Form<Scalar>::constant(Scalar(1));
  Form<Scalar> base = f;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

/// f(M x): substitutes X_i -> sum_j M(i, j) X_j.
template <typename Scalar>
Form<Scalar> substitute_linear(const Form<Scalar>& f,
                               const Eigen::Matrix<Scalar, 4, 4>& m) {
  std::array<Form<Scalar>, 4> images;
  for (int i = 0; i < 4; ++i)
    images[static_cast<std::size_t>(i)] = Form<Scalar>::linear(m.row(i).transpose());
  std::array<std::vector<Form<Scalar>>, 4> powers;
  for (std::size_t i = 0; i < 4; ++i) {
    powers[i].push_back(Form<Scalar>::constant(Scalar(1)));
    for (int k = 1; k <= f.degree(); ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  Form<Scalar> out(f.degree());
  for (const auto& [e, c] : f.terms()) {
    Form<Scalar> term = Form<Scalar>::constant(c);
    for (std::size_t i = 0; i < 4; ++i)
      if (e[i] > 0) term = term * powers[i][static_cast<std::size_t>(e[i])];
    out += term;
  }
  return out;
}

/// Canonical text in the input grammar, e.g. "X^4+Y^4-2*X*Y*Z*T".
std::string to_string(const HomogeneousForm& f);
/// Complex coefficients are rendered as parenthesised "(re+imi)".
std::string to_string(const ComplexForm& f);

/// Raised for malformed or non-homogeneous polynomial text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses integer/rational coefficients over X, Y, Z, T (any case) with
/// + - * ^ and parentheses. Non-homogeneous input is rejected and the
/// offending monomial is named in the message.
HomogeneousForm parse_form(const std::string& text);

}  // namespace ratequiv
