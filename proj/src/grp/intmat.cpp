#include "fk/intmat.hpp"

#include <cstdlib>
#include <sstream>

namespace fk {

i64 add_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw BoundExceeded("integer overflow in exact arithmetic");
  return r;
}

i64 mul_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw BoundExceeded("integer overflow in exact arithmetic");
  return r;
}

i64 gcd64(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 ipow(i64 base, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r = mul_checked(r, base);
  return r;
}

int valuation(i64 x, int p) {
  if (x == 0) throw StructureError("valuation of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 inverse_mod(i64 u, i64 m) {
  if (m == 1) return 0;
  __int128 old_r = mod_floor(u, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw StructureError("inverse_mod: not invertible");
  __int128 res = old_s % m;
  if (res < 0) res += m;
  return static_cast<i64>(res);
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<i64>>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : int(rows[0].size()));
  IntMatrix m(int(rows.size()), c);
  for (int i = 0; i < m.rows(); ++i) {
    if (int(rows[i].size()) != c) throw InputError("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw StructureError("matrix product: dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      i64 x = (*this)(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) = add_checked(r(i, j), mul_checked(x, o(k, j)));
    }
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StructureError("matrix difference: dimension mismatch");
  IntMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = add_checked(a_[i], -o.a_[i]);
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StructureError("matrix sum: dimension mismatch");
  IntMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = add_checked(a_[i], o.a_[i]);
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::column(int j) const { return select_columns({j}); }

IntMatrix IntMatrix::select_columns(const std::vector<int>& idx) const {
  IntMatrix r(rows_, int(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) r(i, int(k)) = (*this)(i, idx[k]);
  return r;
}

IntMatrix IntMatrix::select_rows(const std::vector<int>& idx) const {
  IntMatrix r(int(idx.size()), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (int j = 0; j < cols_; ++j) r(int(k), j) = (*this)(idx[k], j);
  return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ == 0 && a.cols_ != b.cols_) return b;
  if (b.rows_ == 0 && a.cols_ != b.cols_) return a;
  if (a.cols_ != b.cols_) throw StructureError("vstack: column mismatch");
  IntMatrix r(a.rows_ + b.rows_, a.cols_);
  std::copy(a.a_.begin(), a.a_.end(), r.a_.begin());
  std::copy(b.a_.begin(), b.a_.end(), r.a_.begin() + a.a_.size());
  return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw StructureError("hstack: row mismatch");
  IntMatrix r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
  }
  return r;
}

bool IntMatrix::is_zero() const {
  for (i64 x : a_)
    if (x) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(int i, int j, i64 c) {
  if (!c) return;
  for (int k = 0; k < cols_; ++k) (*this)(i, k) = add_checked((*this)(i, k), mul_checked(c, (*this)(j, k)));
}

void IntMatrix::add_col(int i, int j, i64 c) {
  if (!c) return;
  for (int k = 0; k < rows_; ++k) (*this)(k, i) = add_checked((*this)(k, i), mul_checked(c, (*this)(k, j)));
}

void IntMatrix::negate_row(int i) {
  for (int k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(int i) {
  for (int k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

SmithForm smith(const IntMatrix& M) {
  const int m = M.rows(), n = M.cols();
  SmithForm sf;
  IntMatrix A = M;
  sf.U = sf.Uinv = IntMatrix::identity(m);
  sf.V = sf.Vinv = IntMatrix::identity(n);
  auto row_add = [&](int i, int j, i64 c) {  // row i += c row j
    A.add_row(i, j, c);
    sf.U.add_row(i, j, c);
    sf.Uinv.add_col(j, i, -c);
  };
  auto col_add = [&](int i, int j, i64 c) {  // col i += c col j
    A.add_col(i, j, c);
    sf.V.add_col(i, j, c);
    sf.Vinv.add_row(j, i, -c);
  };
  const int k = std::min(m, n);
  for (int t = 0; t < k; ++t) {
    bool all_zero = false;
    for (;;) {
      int bi = -1, bj = -1;
      i64 best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) {
          i64 x = std::llabs(A(i, j));
          if (x && (bi < 0 || x < best)) {
            best = x;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) {
        all_zero = true;
        break;
      }
      if (bi != t) {
        A.swap_rows(bi, t);
        sf.U.swap_rows(bi, t);
        sf.Uinv.swap_cols(bi, t);
      }
      if (bj != t) {
        A.swap_cols(bj, t);
        sf.V.swap_cols(bj, t);
        sf.Vinv.swap_rows(bj, t);
      }
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        i64 q = A(i, t) / A(t, t);
        row_add(i, t, -q);
        if (A(i, t)) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        i64 q = A(t, j) / A(t, t);
        col_add(j, t, -q);
        if (A(t, j)) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t)) {
            bad = i;
            break;
          }
      if (bad >= 0) {
        row_add(t, bad, 1);
        continue;
      }
      break;
    }
    if (all_zero) break;
    if (A(t, t) < 0) {
      A.negate_row(t);
      sf.U.negate_row(t);
      sf.Uinv.negate_col(t);
    }
  }
  sf.D = A;
  sf.diag.resize(k);
  sf.rank = 0;
  for (int t = 0; t < k; ++t) {
    sf.diag[t] = A(t, t);
    if (A(t, t)) ++sf.rank;
  }
  return sf;
}

IntMatrix hnf_rows(const IntMatrix& M) {
  IntMatrix A = M;
  const int m = A.rows(), n = A.cols();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    for (;;) {
      int bi = -1;
      i64 best = 0;
      for (int i = r; i < m; ++i) {
        i64 x = std::llabs(A(i, c));
        if (x && (bi < 0 || x < best)) {
          best = x;
          bi = i;
        }
      }
      if (bi < 0) break;
      A.swap_rows(bi, r);
      bool clean = true;
      for (int i = r + 1; i < m; ++i) {
        i64 q = A(i, c) / A(r, c);
        A.add_row(i, r, -q);
        if (A(i, c)) clean = false;
      }
      if (clean) break;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) A.negate_row(r);
    for (int i = 0; i < r; ++i) {
      i64 q = A(i, c) / A(r, c);
      if (A(i, c) - q * A(r, c) < 0) --q;
      A.add_row(i, r, -q);
    }
    ++r;
  }
  std::vector<int> keep(r);
  for (int i = 0; i < r; ++i) keep[i] = i;
  return A.select_rows(keep);
}

IntMatrix inverse_unimodular(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw StructureError("inverse of non-square matrix");
  SmithForm sf = smith(M);
  for (i64 d : sf.diag)
    if (d != 1) throw StructureError("matrix is not unimodular: " + M.to_string());
  return sf.V * sf.U;
}

i64 determinant(const IntMatrix& M) {
  const int n = M.rows();
  if (n != M.cols()) throw StructureError("determinant of non-square matrix");
  if (n == 0) return 1;
  std::vector<__int128> a(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = M(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i * n + k] != 0) {
          s = i;
          break;
        }
      if (s < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[s * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
    prev = a[k * n + k];
  }
  __int128 d = a[(n - 1) * n + (n - 1)] * sign;
  if (d > INT64_MAX || d < INT64_MIN) throw BoundExceeded("determinant overflow");
  return static_cast<i64>(d);
}

IntMatrix left_kernel(const IntMatrix& M) {
  SmithForm sf = smith(M);
  std::vector<int> idx;
  for (int i = sf.rank; i < M.rows(); ++i) idx.push_back(i);
  return sf.U.select_rows(idx);
}

}  // namespace fk
