#pragma once

#include <cstddef>
#include <vector>

#include "qes/rational.hpp"
#include "qes/upoly.hpp"

namespace qes {

/// Dense row-major matrix over Q.
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

QMatrix zero_matrix(std::size_t rows, std::size_t cols);
QMatrix identity_matrix(std::size_t n);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);
QVector mat_vec(const QMatrix& a, const QVector& x);

/// Fraction-free (Bareiss) determinant of a square matrix.
Rational determinant(const QMatrix& m);

struct RowEchelon {
  QMatrix rref;
  std::vector<std::size_t> pivots;
};
RowEchelon reduced_row_echelon(QMatrix m);

std::size_t rank(const QMatrix& m);
/// Basis of {x : m x = 0}; one vector per free column, that entry set to 1.
std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols);

struct LinearSolution {
  bool consistent = false;
  std::size_t rank = 0;
  /// Free variables set to zero.
  QVector particular;
  std::vector<QVector> kernel;
};
LinearSolution solve(const QMatrix& a, const QVector& b, std::size_t cols);

/// det(x I - m) through Hessenberg reduction.
UPoly characteristic_polynomial(const QMatrix& m);

/// Strongly connected components of the graph j -> i for m[i][j] != 0, listed so
/// that m is block triangular in that order. Each component is sorted.
std::vector<std::vector<std::size_t>> strongly_connected_blocks(const QMatrix& m);

QMatrix principal_submatrix(const QMatrix& m, const std::vector<std::size_t>& idx);

}  // namespace qes
