#include "ratequiv/line.hpp"

#include <Eigen/Dense>

namespace ratequiv {

std::array<Complex, 6> normalized_plucker(const ComplexLine& l) {
  auto c = l.plucker();
  std::size_t best = 0;
  for (std::size_t i = 1; i < 6; ++i)
    if (std::abs(c[i]) > std::abs(c[best]) * (1.0 + 1e-12)) best = i;
  Complex s = c[best];
  for (auto& x : c) x /= s;
  return c;
}

double distance_to_line(const ComplexLine& l, const Vec4c& p) {
  Eigen::Matrix<Complex, 4, 2> span;
  span.col(0) = l.first().coords();
  span.col(1) = l.second().coords();
  Eigen::HouseholderQR<Eigen::Matrix<Complex, 4, 2>> qr(span);
  Eigen::Matrix<Complex, 4, 2> q = qr.householderQ() * Eigen::Matrix<Complex, 4, 2>::Identity();
  Vec4c u = p.normalized();
  Vec4c rest = u - q * (q.adjoint() * u);
  return rest.norm();
}

bool lines_meet(const ComplexLine& a, const ComplexLine& b, double tol) {
  Eigen::Matrix4cd m;
  m.col(0) = a.first().coords().normalized();
  m.col(1) = a.second().coords().normalized();
  m.col(2) = b.first().coords().normalized();
  m.col(3) = b.second().coords().normalized();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
  return svd.singularValues()(3) <= tol * svd.singularValues()(0);
}

}  // namespace ratequiv
