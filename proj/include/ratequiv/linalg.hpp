#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ratequiv/scalar.hpp"

namespace ratequiv {

using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixZ = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

/// Reduced row echelon form over Q; `pivots` lists pivot columns.
struct RowEchelon {
  MatrixQ reduced;
  std::vector<int> pivots;
};

RowEchelon row_reduce(MatrixQ m);
int rank(const MatrixQ& m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<VectorQ> nullspace(const MatrixQ& m);
/// Some solution of m x = b, or nothing when inconsistent.
std::optional<VectorQ> solve(const MatrixQ& m, const VectorQ& b);

/// Fraction-free Gaussian elimination.
Integer bareiss_determinant(MatrixZ m);
/// Exact determinant of a square rational matrix (rows cleared of denominators).
Rational determinant(const MatrixQ& m);

}  // namespace ratequiv
