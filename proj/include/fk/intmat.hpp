#pragma once

#include <string>
#include <vector>

#include "fk/core.hpp"

namespace fk {

// Overflow-checked 64-bit arithmetic; throws BoundExceeded on overflow.
i64 add_checked(i64 a, i64 b);
i64 mul_checked(i64 a, i64 b);
i64 gcd64(i64 a, i64 b);
i64 ipow(i64 base, int e);
// Largest v with p^v | x (x != 0).
int valuation(i64 x, int p);
// Inverse of u modulo m (gcd(u, m) = 1).
i64 inverse_mod(i64 u, i64 m);
i64 mod_floor(i64 a, i64 m);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<i64>>& rows, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  i64& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  i64 operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;
  auto operator<=>(const IntMatrix& o) const = default;

  IntMatrix transpose() const;
  IntMatrix column(int j) const;
  IntMatrix select_columns(const std::vector<int>& idx) const;
  IntMatrix select_rows(const std::vector<int>& idx) const;
  // Stack vertically / horizontally. Empty operands are allowed.
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

  bool is_zero() const;
  std::string to_string() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  // row i += c * row j
  void add_row(int i, int j, i64 c);
  // col i += c * col j
  void add_col(int i, int j, i64 c);
  void negate_row(int i);
  void negate_col(int i);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<i64> a_;
};

// U * M * V = D with U, V unimodular and D diagonal, d_0 | d_1 | ... (nonnegative).
struct SmithForm {
  IntMatrix U, Uinv, V, Vinv, D;
  std::vector<i64> diag;  // length min(rows, cols)
  int rank = 0;
};
SmithForm smith(const IntMatrix& M);

// Row-style Hermite normal form of the lattice spanned by the rows of M;
// zero rows dropped. Canonical for the lattice.
IntMatrix hnf_rows(const IntMatrix& M);

// Integer inverse of a unimodular square matrix; throws StructureError otherwise.
IntMatrix inverse_unimodular(const IntMatrix& M);

i64 determinant(const IntMatrix& M);

// Basis of {y in Z^rows : y M = 0} as rows of the result (saturated).
IntMatrix left_kernel(const IntMatrix& M);

}  // namespace fk
