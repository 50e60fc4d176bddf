#pragma once

#include "bmir/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace bmir {

struct SingularMatrixError : std::domain_error {
  using std::domain_error::domain_error;
};

struct LinearSystem {
  std::vector<std::vector<Scalar>> matrix;
  std::vector<Scalar> rhs;
};

// Gaussian elimination over any exact field type.
template <class F>
std::vector<F> gauss_solve(std::vector<std::vector<F>> a, std::vector<F> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("rhs length does not match matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("linear system is not square");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == F(0)) ++piv;
    if (piv == n) throw SingularMatrixError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    F inv = F(1) / a[col][col];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == F(0)) continue;
      F f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] = b[r] / a[r][r];
  return b;
}

inline std::vector<Scalar> linear_solve(const LinearSystem& sys) {
  return gauss_solve<Scalar>(sys.matrix, sys.rhs);
}

// Inverse of a square rational matrix.
std::vector<std::vector<Rational>> rational_inverse(const std::vector<std::vector<Rational>>& a);

}  // namespace bmir
