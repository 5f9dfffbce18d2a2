#pragma once

// Small dense linear algebra over generic (possibly AD) scalars. Everything is
// branch-free cofactor arithmetic so derivatives flow through unchanged.

#include <array>
#include <bit>
#include <cstdint>

namespace lcs {

template <class S>
using Matrix4 = std::array<std::array<S, 4>, 4>;

namespace linalg {

/// Determinant of the k x k submatrix selected by row and column index lists.
template <class S, class M>
S sub_det(const M& m, const int* rows, const int* cols, int k) {
  switch (k) {
    case 0:
      return S(1.0);
    case 1:
      return m[rows[0]][cols[0]];
    case 2:
      return m[rows[0]][cols[0]] * m[rows[1]][cols[1]] -
             m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
    default: {
      // Laplace expansion along the first selected row.
      S acc(0.0);
      int sub_cols[4];
      for (int c = 0; c < k; ++c) {
        int n = 0;
        for (int j = 0; j < k; ++j)
          if (j != c) sub_cols[n++] = cols[j];
        const S term = m[rows[0]][cols[c]] * sub_det<S>(m, rows + 1, sub_cols, k - 1);
        acc = (c % 2 == 0) ? acc + term : acc - term;
      }
      return acc;
    }
  }
}

/// Minor of a 4x4 matrix with rows and columns given as bit masks of equal
/// popcount.
template <class S>
S minor(const Matrix4<S>& m, std::uint8_t row_mask, std::uint8_t col_mask) {
  int rows[4];
  int cols[4];
  int nr = 0;
  int nc = 0;
  for (int i = 0; i < 4; ++i) {
    if (row_mask & (1u << i)) rows[nr++] = i;
    if (col_mask & (1u << i)) cols[nc++] = i;
  }
  return sub_det<S>(m, rows, cols, nr);
}

template <class S>
S det(const Matrix4<S>& m) {
  return minor(m, 0xF, 0xF);
}

/// Inverse through the adjugate; the caller checks the determinant.
template <class S>
Matrix4<S> inverse(const Matrix4<S>& m, const S& determinant) {
  Matrix4<S> inv{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // inv[i][j] = (-1)^{i+j} M_{ji} / det
      const std::uint8_t rows = static_cast<std::uint8_t>(0xF & ~(1u << j));
      const std::uint8_t cols = static_cast<std::uint8_t>(0xF & ~(1u << i));
      const S cof = minor(m, rows, cols);
      inv[i][j] = ((i + j) % 2 == 0 ? cof : -cof) / determinant;
    }
  }
  return inv;
}

template <class S>
Matrix4<S> transpose(const Matrix4<S>& m) {
  Matrix4<S> t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = m[j][i];
  return t;
}

}  // namespace linalg
}  // namespace lcs
