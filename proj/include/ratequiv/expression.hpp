#pragma once

#include <stdexcept>

#include "ratequiv/form.hpp"

namespace ratequiv {

/// Degrees (s, e) of a complete-intersection expression: s for a and b, e for h.
struct MultiDegree {
  long s = 1;
  long e = 1;

  MultiDegree() = default;
  MultiDegree(long s_, long e_) : s(s_), e(e_) {
    if (s < 1 || e < 1) throw std::invalid_argument("multidegree entries must be positive");
  }
  friend bool operator==(const MultiDegree& x, const MultiDegree& y) { return x.s == y.s && x.e == y.e; }
};

/// X - Y = [{a = h = f = 0}] - [{b = h = f = 0}] on a surface {f = 0}.
template <typename Scalar>
class CIExpression {
 public:
  CIExpression(Form<Scalar> a, Form<Scalar> b, Form<Scalar> h)
      : a_(std::move(a)), b_(std::move(b)), h_(std::move(h)) {
    if (a_.is_zero() || b_.is_zero() || h_.is_zero())
      throw std::invalid_argument("expression forms must be nonzero");
    if (a_.degree() != b_.degree()) throw std::invalid_argument("a and b must have the same degree");
  }

  const Form<Scalar>& a() const { return a_; }
  const Form<Scalar>& b() const { return b_; }
  const Form<Scalar>& h() const { return h_; }
  int s() const { return a_.degree(); }
  int e() const { return h_.degree(); }

  /// The expression for Y - X.
  CIExpression swapped() const { return CIExpression(b_, a_, h_); }

  template <typename To>
  CIExpression<To> cast() const {
    return CIExpression<To>(a_.template cast<To>(), b_.template cast<To>(), h_.template cast<To>());
  }

 private:
  Form<Scalar> a_, b_, h_;
};

}  // namespace ratequiv
