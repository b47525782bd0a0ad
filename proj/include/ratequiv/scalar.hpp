#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <string>

namespace ratequiv {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

using Vec4q = Vec4<Rational>;
using Vec4c = Vec4<Complex>;
using Vec3q = Vec3<Rational>;
using Vec3c = Vec3<Complex>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Conversion between the exact and numeric scalar towers.
template <typename To, typename From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, Rational>) {
    if constexpr (is_complex<To>::value) {
      using Real = typename To::value_type;
      return To(static_cast<Real>(x.get_d()), Real(0));
    } else {
      return static_cast<To>(x.get_d());
    }
  } else if constexpr (is_complex<From>::value && is_complex<To>::value) {
    using Real = typename To::value_type;
    return To(static_cast<Real>(x.real()), static_cast<Real>(x.imag()));
  } else {
    return static_cast<To>(x);
  }
}

/// n/d in canonical form.
inline Rational make_rational(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
template <typename T>
bool is_zero(const std::complex<T>& x) {
  return x.real() == T(0) && x.imag() == T(0);
}

inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
template <typename T>
double magnitude(const std::complex<T>& x) {
  return static_cast<double>(std::abs(x));
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

/// Fixed-width decimal rendering used in every machine-readable report.
std::string format_real(double x);
std::string format_complex(const Complex& z);

}  // namespace ratequiv

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
