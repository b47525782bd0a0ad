#pragma once

#include <stdexcept>
#include <string>

#include "ratequiv/scalar.hpp"

namespace ratequiv {

/// a + b sqrt(d) in Q(sqrt(d)) for a fixed rational d that is not a square.
class QuadraticSurd {
 public:
  QuadraticSurd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Rational& radicand() const { return d_; }

  bool is_zero() const { return ratequiv::is_zero(a_) && ratequiv::is_zero(b_); }

  Complex to_complex() const {
    const double dd = d_.get_d();
    const Complex root = dd >= 0 ? Complex(std::sqrt(dd), 0.0) : Complex(0.0, std::sqrt(-dd));
    return a_.get_d() + b_.get_d() * root;
  }

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    check(x, y);
    return {Rational(x.a_ + y.a_), Rational(x.b_ + y.b_), x.d_};
  }
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) {
    check(x, y);
    return {Rational(x.a_ - y.a_), Rational(x.b_ - y.b_), x.d_};
  }
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    check(x, y);
    return {Rational(x.a_ * y.a_ + x.b_ * y.b_ * x.d_), Rational(x.a_ * y.b_ + x.b_ * y.a_), x.d_};
  }

  std::string to_string() const {
    return a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + Rational(abs(b_)).get_str() + "*sqrt(" + d_.get_str() + ")";
  }

 private:
  static void check(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.d_ != y.d_) throw std::invalid_argument("surds over different quadratic fields");
  }

  Rational a_, b_, d_;
};

/// The square root of a nonnegative rational when it is rational.
inline bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

}  // namespace ratequiv
