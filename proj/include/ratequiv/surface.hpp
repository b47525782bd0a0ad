#pragma once

#include <array>
#include <stdexcept>

#include "ratequiv/form.hpp"
#include "ratequiv/point.hpp"

namespace ratequiv {

/// Surface {f = 0} in P^3 with its gradient cached.
template <typename Scalar>
class SurfaceP3 {
 public:
  explicit SurfaceP3(Form<Scalar> f) : f_(std::move(f)) {
    if (f_.is_zero()) throw std::invalid_argument("surface equation is zero");
    if (f_.degree() < 1) throw std::invalid_argument("surface equation must have degree at least 1");
    grad_ = f_.gradient();
  }

  const Form<Scalar>& form() const { return f_; }
  int degree() const { return f_.degree(); }
  const std::array<Form<Scalar>, 4>& gradient() const { return grad_; }

  template <typename T>
  Vec4<T> gradient_at(const Vec4<T>& v) const {
    Vec4<T> g;
    for (int i = 0; i < 4; ++i) g(i) = grad_[static_cast<std::size_t>(i)](v);
    return g;
  }

  /// |f(p)| relative to the coefficient size, for numeric membership tests.
  double relative_value(const Vec4c& p) const {
    double scale = 0.0;
    for (const auto& [e, c] : f_.terms()) scale += magnitude(c);
    Vec4c v = p / p.cwiseAbs().maxCoeff();
    return std::abs(f_(v)) / scale;
  }

  template <typename To>
  SurfaceP3<To> cast() const {
    return SurfaceP3<To>(f_.template cast<To>());
  }

 private:
  Form<Scalar> f_;
  std::array<Form<Scalar>, 4> grad_;
};

using Surface = SurfaceP3<Rational>;
using ComplexSurface = SurfaceP3<Complex>;

}  // namespace ratequiv
