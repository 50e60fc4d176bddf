#include "bmir/intmat.hpp"

#include <stdexcept>

namespace bmir {

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat to_z(const IntMatrix& a) {
  ZMat z;
  for (const auto& r : a) {
    std::vector<mpz_class> row;
    for (long v : r) row.emplace_back(v);
    z.push_back(std::move(row));
  }
  return z;
}

IntMatrix from_z(const ZMat& z) {
  IntMatrix a;
  for (const auto& r : z) {
    IntRow row;
    for (const auto& v : r) {
      if (!v.fits_slong_p()) throw std::overflow_error("matrix entry exceeds long");
      row.push_back(v.get_si());
    }
    a.push_back(std::move(row));
  }
  return a;
}

// In-place row HNF; applies the same row operations to u when given.
void hnf_in_place(ZMat& a, ZMat* u) {
  if (a.empty()) return;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      if (u) std::swap((*u)[r], (*u)[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (std::size_t k = 0; k < cols; ++k) a[i][k] -= q * a[r][k];
        if (u)
          for (std::size_t k = 0; k < (*u)[i].size(); ++k) (*u)[i][k] -= q * (*u)[r][k];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& v : a[r]) v = -v;
      if (u)
        for (auto& v : (*u)[r]) v = -v;
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= q * a[r][k];
      if (u)
        for (std::size_t k = 0; k < (*u)[i].size(); ++k) (*u)[i][k] -= q * (*u)[r][k];
    }
    ++r;
  }
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& a) {
  ZMat z = to_z(a);
  hnf_in_place(z, nullptr);
  ZMat out;
  for (auto& row : z) {
    bool zero = true;
    for (auto& v : row) zero = zero && v == 0;
    if (!zero) out.push_back(row);
  }
  return from_z(out);
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  ZMat z = to_z(a);
  ZMat u(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  hnf_in_place(z, &u);
  ZMat ker;
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = true;
    for (auto& v : z[i]) zero = zero && v == 0;
    if (zero) ker.push_back(u[i]);
  }
  return hermite_normal_form(from_z(ker));
}

long matrix_rank(const IntMatrix& a) { return static_cast<long>(hermite_normal_form(a).size()); }

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), IntRow(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  return hermite_normal_form(a) == hermite_normal_form(b);
}

}  // namespace bmir
