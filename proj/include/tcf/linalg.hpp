#pragma once

#include <optional>
#include <vector>

#include "tcf/rational.hpp"

namespace tcf {

using QVec = std::vector<Rational>;
using QMat = std::vector<std::vector<Rational>>;

/// Determinant by exact Gaussian elimination. Pre: square.
inline Rational q_det(QMat a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw precondition_error("q_det: matrix not square");
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

/// Row echelon reduction of [A | b]; returns one solution of A x = b (free
/// variables set to zero) or nullopt when inconsistent. A may be any shape.
inline std::optional<QVec> q_solve(QMat a, QVec b) {
  std::size_t rows = a.size();
  if (b.size() != rows) throw precondition_error("q_solve: shape mismatch");
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<long> pivot_col(rows, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    Rational inv = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
    b[r] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col[r] = static_cast<long>(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  QVec x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col[i])] = b[i];
  return x;
}

inline int q_rank(QMat a) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<QMat> q_inverse(const QMat& a) {
  std::size_t n = a.size();
  QMat aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) throw precondition_error("q_inverse: matrix not square");
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = r;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(aug[piv], aug[r]);
    Rational inv = aug[r][c];
    for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] /= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[r][j];
    }
    ++r;
  }
  QMat out(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

}  // namespace tcf
