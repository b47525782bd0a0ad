#include "ratequiv/linalg.hpp"

#include <stdexcept>

namespace ratequiv {

RowEchelon row_reduce(MatrixQ m) {
  RowEchelon out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    Rational inv = 1 / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) = Rational(m(r, j) * inv);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Rational factor = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = Rational(m(i, j) - factor * m(r, j));
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

int rank(const MatrixQ& m) { return static_cast<int>(row_reduce(m).pivots.size()); }

std::vector<VectorQ> nullspace(const MatrixQ& m) {
  RowEchelon e = row_reduce(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<VectorQ> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    VectorQ v = VectorQ::Constant(cols, Rational(0));
    v(free) = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      v(e.pivots[k]) = Rational(-e.reduced(static_cast<Eigen::Index>(k), free));
    basis.push_back(v);
  }
  return basis;
}

std::optional<VectorQ> solve(const MatrixQ& m, const VectorQ& b) {
  MatrixQ aug(m.rows(), m.cols() + 1);
  aug << m, b;
  RowEchelon e = row_reduce(aug);
  VectorQ x = VectorQ::Constant(m.cols(), Rational(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == m.cols()) return std::nullopt;
    x(e.pivots[k]) = e.reduced(static_cast<Eigen::Index>(k), m.cols());
  }
  return x;
}

Integer bareiss_determinant(MatrixZ m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    }
    prev = m(k, k);
  }
  Integer det = m(n - 1, n - 1);
  return sign > 0 ? det : Integer(-det);
}

Rational determinant(const MatrixQ& m) {
  const Eigen::Index n = m.rows();
  MatrixZ z(n, m.cols());
  Rational scale = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    Integer l = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Integer d = m(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      z(i, j) = v.get_num();
    }
    scale *= l;
  }
  Rational det(bareiss_determinant(std::move(z)));
  det /= scale;
  return det;
}

}  // namespace ratequiv
