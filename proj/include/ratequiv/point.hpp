#pragma once

#include <stdexcept>
#include <string>

#include "ratequiv/scalar.hpp"

namespace ratequiv {

/// Raised when a computation needs T != 0 and the input violates it.
class ChartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point of P^3 in homogeneous coordinates (X, Y, Z, T).
///
/// Exact points are scaled so that the first nonzero coordinate is 1; numeric
/// points so that the largest-magnitude coordinate is 1. Normalization is
/// idempotent.
template <typename Scalar>
class ProjectivePoint {
 public:
  ProjectivePoint() : coords_(Vec4<Scalar>(Scalar(0), Scalar(0), Scalar(0), Scalar(1))) {}
  explicit ProjectivePoint(const Vec4<Scalar>& coords) : coords_(coords) { normalize(); }
  ProjectivePoint(Scalar x, Scalar y, Scalar z, Scalar t)
      : ProjectivePoint(Vec4<Scalar>(x, y, z, t)) {}

  const Vec4<Scalar>& coords() const { return coords_; }
  const Scalar& operator()(int i) const { return coords_(i); }

  bool on_chart() const { return !is_zero(coords_(3)); }

  /// (X/T, Y/T, Z/T).
  Vec3<Scalar> affine() const {
    if (!on_chart()) throw ChartError("point lies on the plane T = 0");
    Vec3<Scalar> a;
    for (int i = 0; i < 3; ++i) a(i) = Scalar(coords_(i) / coords_(3));
    return a;
  }

  ProjectivePoint<Complex> to_numeric() const {
    Vec4c c;
    for (int i = 0; i < 4; ++i) c(i) = scalar_cast<Complex>(coords_(i));
    return ProjectivePoint<Complex>(c);
  }

 private:
  void normalize() {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      for (int i = 0; i < 4; ++i) {
        if (!is_zero(coords_(i))) {
          Rational s = coords_(i);
          for (int j = 0; j < 4; ++j) coords_(j) = Rational(coords_(j) / s);
          return;
        }
      }
      throw std::invalid_argument("projective point with all coordinates zero");
    } else {
      int best = 0;
      double m = 0.0;
      for (int i = 0; i < 4; ++i) {
        double a = std::abs(coords_(i));
        if (a > m * (1.0 + 1e-12)) {
          m = a;
          best = i;
        }
      }
      if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("projective point with all coordinates zero");
      Scalar s = coords_(best);
      coords_ /= s;
      coords_(best) = Scalar(1);
    }
  }

  Vec4<Scalar> coords_;
};

using RationalPoint = ProjectivePoint<Rational>;
using ComplexPoint = ProjectivePoint<Complex>;

/// sin of the Hermitian angle between representatives; 0 iff equal points.
double chordal_distance(const Vec4c& p, const Vec4c& q);
inline double chordal_distance(const ComplexPoint& p, const ComplexPoint& q) {
  return chordal_distance(p.coords(), q.coords());
}

/// Parses "x,y,z,t" or "(x:y:z:t)" with rational entries.
RationalPoint parse_point(const std::string& text);
std::string to_string(const RationalPoint& p);
std::string to_string(const ComplexPoint& p);

}  // namespace ratequiv
