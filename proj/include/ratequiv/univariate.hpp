#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "ratequiv/scalar.hpp"

namespace ratequiv {

/// Raised when a univariate problem has no usable leading coefficient.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense univariate polynomial with complex coefficients, lowest degree first.
template <typename Real = double>
class UnivariatePolynomial {
 public:
  using Coefficient = std::complex<Real>;

  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Coefficient> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<Coefficient>& coefficients() const { return coeffs_; }
  /// Index of the last stored coefficient; -1 when empty.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Coefficient operator()(const Coefficient& z) const {
    Coefficient acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  UnivariatePolynomial derivative() const {
    std::vector<Coefficient> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Real(k));
    return UnivariatePolynomial(std::move(d));
  }

  Real max_coefficient() const {
    Real m(0);
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drops leading coefficients with |c| <= tol * max|c|. Returns how many
  /// were dropped through `dropped`.
  UnivariatePolynomial trimmed(double tol, int* dropped = nullptr) const {
    Real m = max_coefficient();
    std::vector<Coefficient> c = coeffs_;
    int n = 0;
    while (!c.empty() && std::abs(c.back()) <= Real(tol) * m) {
      c.pop_back();
      ++n;
    }
    if (dropped) *dropped = n;
    return UnivariatePolynomial(std::move(c));
  }

  template <typename To>
  UnivariatePolynomial<To> cast() const {
    std::vector<std::complex<To>> c;
    for (const auto& x : coeffs_) c.emplace_back(static_cast<To>(x.real()), static_cast<To>(x.imag()));
    return UnivariatePolynomial<To>(std::move(c));
  }

  static UnivariatePolynomial from_roots(const std::vector<Coefficient>& roots,
                                         Coefficient leading = Coefficient(1)) {
    std::vector<Coefficient> c{leading};
    for (const auto& r : roots) {
      std::vector<Coefficient> next(c.size() + 1, Coefficient(0));
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= r * c[k];
      }
      c = std::move(next);
    }
    return UnivariatePolynomial(std::move(c));
  }

 private:
  std::vector<Coefficient> coeffs_;
};

struct RootOptions {
  /// A group of m roots is merged into one m-fold root when moving the
  /// coefficients by this much (relative) gives an exact m-fold root at the
  /// group's centre.
  double cluster_tol = 1e-8;
  /// 53 iterates in double, 64 in extended precision.
  int precision_bits = 64;
  int max_sweeps = 600;
};

struct RootCluster {
  Complex value;
  int multiplicity = 1;
  /// Radius of the inclusion region that certified the cluster.
  double radius = 0.0;
};

/// Roots with multiplicity of p via simultaneous Aberth-Ehrlich iteration,
/// followed by clustering of overlapping inclusion disks. Multiplicities sum
/// to the degree of p after trimming negligible leading coefficients.
std::vector<RootCluster> find_roots(const UnivariatePolynomial<double>& p,
                                    const RootOptions& options = {});

/// Rounding-aware residual bound used to certify approximations:
/// eps * sum |a_k| |z|^k.
double residual_bound(const UnivariatePolynomial<double>& p, const Complex& z);

}  // namespace ratequiv
