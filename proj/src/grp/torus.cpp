#include "fk/torus.hpp"

#include <sstream>

namespace fk {

namespace {

i64 pk(int p, int k) {
  if (k > bounds().max_denominator_exp) throw BoundExceeded("torus denominator exceeds p^" + std::to_string(bounds().max_denominator_exp));
  return ipow(p, k);
}

}  // namespace

namespace torus {

TorusElt zero(int n) {
  TorusElt t;
  t.num.assign(n, 0);
  return t;
}

TorusElt make(int p, int k, std::vector<i64> num) {
  TorusElt t;
  t.k = k;
  i64 m = pk(p, k);
  for (auto& x : num) x = mod_floor(x, m);
  t.num = std::move(num);
  while (t.k > 0) {
    bool div = true;
    for (i64 x : t.num)
      if (x % p) {
        div = false;
        break;
      }
    if (!div) break;
    for (auto& x : t.num) x /= p;
    --t.k;
  }
  return t;
}

TorusElt unit(int p, int n, int i, int k) {
  std::vector<i64> num(n, 0);
  num[i] = 1;
  return make(p, k, num);
}

TorusElt add(int p, const TorusElt& a, const TorusElt& b) {
  if (a.dim() != b.dim()) throw StructureError("torus add: dimension mismatch");
  int k = std::max(a.k, b.k);
  i64 fa = pk(p, k - a.k), fb = pk(p, k - b.k);
  std::vector<i64> num(a.dim());
  i64 m = pk(p, k);
  for (std::size_t i = 0; i < num.size(); ++i) {
    __int128 s = (__int128)a.num[i] * fa + (__int128)b.num[i] * fb;
    num[i] = static_cast<i64>(s % m);
  }
  return make(p, k, std::move(num));
}

TorusElt neg(int p, const TorusElt& a) {
  std::vector<i64> num(a.num);
  for (auto& x : num) x = -x;
  return make(p, a.k, std::move(num));
}

TorusElt sub(int p, const TorusElt& a, const TorusElt& b) { return add(p, a, neg(p, b)); }

TorusElt scale(int p, const TorusElt& a, i64 c) {
  i64 m = pk(p, a.k);
  std::vector<i64> num(a.dim());
  for (std::size_t i = 0; i < num.size(); ++i) num[i] = static_cast<i64>(((__int128)a.num[i] * c) % m);
  return make(p, a.k, std::move(num));
}

TorusElt apply(int p, const IntMatrix& M, const TorusElt& a) {
  if (M.cols() != int(a.dim())) throw StructureError("torus apply: dimension mismatch");
  i64 m = pk(p, a.k);
  std::vector<i64> num(M.rows(), 0);
  for (int i = 0; i < M.rows(); ++i) {
    __int128 s = 0;
    for (int j = 0; j < M.cols(); ++j) {
      s += (__int128)(M(i, j) % m) * a.num[j];
      s %= m;
    }
    num[i] = static_cast<i64>(s);
  }
  return make(p, a.k, std::move(num));
}

TorusElt from_column(int p, const IntMatrix& col, int k) {
  std::vector<i64> num(col.rows());
  i64 m = pk(p, k);
  for (int i = 0; i < col.rows(); ++i) num[i] = mod_floor(col(i, 0), m);
  return make(p, k, std::move(num));
}

std::string to_string(int p, const TorusElt& a) {
  std::ostringstream os;
  os << '(';
  i64 d = ipow(p, a.k);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i) os << ',';
    if (a.num[i] == 0) {
      os << 0;
    } else {
      i64 g = gcd64(a.num[i], d);
      os << a.num[i] / g << '/' << d / g;
    }
  }
  os << ')';
  return os.str();
}

TorusElt divide(int p, const TorusElt& c, i64 d) {
  if (d == 0) throw StructureError("divide by zero in torus");
  int v = valuation(d, p);
  i64 u = d / ipow(p, v);
  int k = c.k + v;
  i64 m = pk(p, k);
  i64 uinv = inverse_mod(mod_floor(u, m), m);
  std::vector<i64> num(c.dim());
  for (std::size_t i = 0; i < num.size(); ++i) num[i] = static_cast<i64>(((__int128)c.num[i] * uinv) % m);
  return make(p, k, std::move(num));
}

}  // namespace torus

TorusSub TorusSub::whole(int p, int r) {
  TorusSub a;
  a.p_ = p;
  a.r_ = r;
  a.ann_ = IntMatrix(0, r);
  a.finish();
  return a;
}

TorusSub TorusSub::trivial(int p, int r) {
  TorusSub a;
  a.p_ = p;
  a.r_ = r;
  a.ann_ = IntMatrix::identity(r);
  a.finish();
  return a;
}

TorusSub TorusSub::from_generators(int p, int r, const IntMatrix& div, const std::vector<TorusElt>& fin) {
  if (div.rows() != r) throw StructureError("divisible generators: wrong dimension");
  int e = 0;
  std::vector<const TorusElt*> gens;
  for (const auto& f : fin) {
    if (int(f.dim()) != r) throw StructureError("finite generator: wrong dimension");
    if (f.is_zero()) continue;
    gens.push_back(&f);
    e = std::max(e, f.k);
  }
  const int s = div.cols(), k = int(gens.size());
  i64 pe = pk(p, e);
  // Rows (y, z): y D = 0 and y G + p^e z = 0; Ann is the projection to y.
  IntMatrix X(r + k, s + k);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < s; ++j) X(i, j) = div(i, j);
    for (int j = 0; j < k; ++j) X(i, s + j) = mul_checked(gens[j]->num[i], pk(p, e - gens[j]->k));
  }
  for (int j = 0; j < k; ++j) X(r + j, s + j) = pe;
  IntMatrix K = left_kernel(X);
  std::vector<int> cols(r);
  for (int i = 0; i < r; ++i) cols[i] = i;
  TorusSub a;
  a.p_ = p;
  a.r_ = r;
  a.ann_ = hnf_rows(K.select_columns(cols));
  a.finish();
  return a;
}

TorusSub TorusSub::kernel(int p, const IntMatrix& M) {
  const int r = M.cols();
  SmithForm sf = smith(M);
  std::vector<int> free;
  std::vector<TorusElt> fin;
  for (int i = 0; i < r; ++i) {
    i64 d = i < int(sf.diag.size()) ? sf.diag[i] : 0;
    if (d == 0) {
      free.push_back(i);
    } else {
      int v = valuation(d, p);
      if (v > 0) fin.push_back(torus::from_column(p, sf.V.column(i), v));
    }
  }
  return from_generators(p, r, sf.V.select_columns(free), fin);
}

void TorusSub::finish() {
  SmithForm sf = smith(ann_);
  V_ = sf.V;
  Vinv_ = sf.Vinv;
  free_.clear();
  fin_idx_.clear();
  fin_exp_.clear();
  bounded_.clear();
  bounded_exp_.clear();
  finite_order_ = 1;
  for (int i = 0; i < r_; ++i) {
    i64 d = i < int(sf.diag.size()) ? sf.diag[i] : 0;
    if (d == 0) {
      free_.push_back(i);
      continue;
    }
    int v = valuation(d, p_);
    bounded_.push_back(i);
    bounded_exp_.push_back(v);
    if (v > 0) {
      fin_idx_.push_back(i);
      fin_exp_.push_back(v);
      finite_order_ = mul_checked(finite_order_, ipow(p_, v));
    }
  }
}

IntMatrix TorusSub::div_basis() const { return V_.select_columns(free_); }

IntMatrix TorusSub::div_coords() const { return Vinv_.select_rows(free_); }

std::vector<TorusElt> TorusSub::finite_gens() const {
  std::vector<TorusElt> out;
  for (std::size_t j = 0; j < fin_idx_.size(); ++j) out.push_back(torus::from_column(p_, V_.column(fin_idx_[j]), fin_exp_[j]));
  return out;
}

TorusElt TorusSub::signature(const TorusElt& t) const { return torus::apply(p_, ann_, t); }

bool TorusSub::contains(const TorusElt& t) const { return signature(t).is_zero(); }

bool TorusSub::contains(const TorusSub& o) const {
  IntMatrix ob = o.div_basis();
  if (!(ann_ * ob).is_zero()) return false;
  for (const auto& f : o.finite_gens())
    if (!contains(f)) return false;
  return true;
}

TorusElt TorusSub::canon_mod(const TorusElt& t) const {
  TorusElt y = torus::apply(p_, Vinv_, t);
  std::vector<i64> num = y.num;
  for (int i : free_) num[i] = 0;
  for (std::size_t j = 0; j < bounded_.size(); ++j) {
    int i = bounded_[j], v = bounded_exp_[j];
    if (y.k <= v) num[i] = 0;
    else num[i] = mod_floor(num[i], ipow(p_, y.k - v));
  }
  return torus::apply(p_, V_, torus::make(p_, y.k, std::move(num)));
}

TorusElt TorusSub::canon_mod_identity(const TorusElt& a) const {
  TorusElt y = torus::apply(p_, Vinv_, a);
  std::vector<i64> num = y.num;
  for (int i : free_) num[i] = 0;
  return torus::apply(p_, V_, torus::make(p_, y.k, std::move(num)));
}

std::vector<TorusElt> TorusSub::finite_reps() const {
  std::vector<TorusElt> out;
  if (finite_order_ > bounds().max_pi0) throw BoundExceeded("finite part of torus subgroup exceeds bound");
  std::vector<i64> radix(fin_idx_.size());
  for (std::size_t j = 0; j < fin_idx_.size(); ++j) radix[j] = ipow(p_, fin_exp_[j]);
  for (i64 n = 0; n < finite_order_; ++n) {
    i64 rest = n;
    int kmax = 0;
    for (int v : fin_exp_) kmax = std::max(kmax, v);
    std::vector<i64> y(r_, 0);
    for (int j = int(fin_idx_.size()) - 1; j >= 0; --j) {
      i64 digit = rest % radix[j];
      rest /= radix[j];
      y[fin_idx_[j]] = mul_checked(digit, ipow(p_, kmax - fin_exp_[j]));
    }
    out.push_back(torus::apply(p_, V_, torus::make(p_, kmax, std::move(y))));
  }
  return out;
}

int TorusSub::finite_index(const TorusElt& a) const {
  TorusElt y = torus::apply(p_, Vinv_, a);
  i64 idx = 0;
  for (std::size_t j = 0; j < fin_idx_.size(); ++j) {
    int i = fin_idx_[j], v = fin_exp_[j];
    i64 digit;
    if (y.k <= v) {
      digit = y.num[i] * ipow(p_, v - y.k);
    } else {
      i64 f = ipow(p_, y.k - v);
      if (y.num[i] % f) throw StructureError("finite_index: element not in subgroup");
      digit = y.num[i] / f;
    }
    idx = idx * ipow(p_, v) + digit;
  }
  for (std::size_t j = 0; j < bounded_.size(); ++j)
    if (bounded_exp_[j] == 0 && y.num[bounded_[j]] != 0) throw StructureError("finite_index: element not in subgroup");
  return int(idx);
}

TorusElt TorusSub::identity_coords(const TorusElt& d) const {
  TorusElt y = torus::apply(p_, Vinv_, d);
  for (int i : bounded_)
    if (y.num[i] != 0) throw StructureError("identity_coords: element not in identity component");
  std::vector<i64> num;
  for (int i : free_) num.push_back(y.num[i]);
  return torus::make(p_, y.k, std::move(num));
}

TorusSub TorusSub::image(const IntMatrix& M) const {
  std::vector<TorusElt> fin;
  for (const auto& f : finite_gens()) fin.push_back(torus::apply(p_, M, f));
  return from_generators(p_, M.rows(), M * div_basis(), fin);
}

TorusSub TorusSub::sum(const TorusSub& o) const {
  std::vector<TorusElt> fin = finite_gens();
  for (const auto& f : o.finite_gens()) fin.push_back(f);
  return from_generators(p_, r_, IntMatrix::hstack(div_basis(), o.div_basis()), fin);
}

TorusSub TorusSub::intersect(const TorusSub& o) const { return kernel(p_, IntMatrix::vstack(ann_, o.ann_)); }

TorusSub TorusSub::identity_component() const { return from_generators(p_, r_, div_basis(), {}); }

std::string TorusSub::to_string() const {
  std::ostringstream os;
  os << "ann=" << ann_.to_string() << " rank=" << rank() << " finite=" << finite_order_;
  return os.str();
}

std::optional<TorusElt> solve_linear(int p, const IntMatrix& M, const TorusElt& c) {
  if (M.rows() != int(c.dim())) throw StructureError("solve_linear: dimension mismatch");
  const int n = M.cols();
  SmithForm sf = smith(M);
  TorusElt cp = torus::apply(p, sf.U, c);
  TorusElt y = torus::zero(n);
  for (int i = 0; i < M.rows(); ++i) {
    i64 d = i < int(sf.diag.size()) ? sf.diag[i] : 0;
    std::vector<i64> one(1, cp.num[i]);
    TorusElt ci = torus::make(p, cp.k, one);
    if (d == 0) {
      if (!ci.is_zero()) return std::nullopt;
      continue;
    }
    TorusElt yi = torus::divide(p, ci, d);
    std::vector<i64> num(n, 0);
    num[i] = yi.is_zero() ? 0 : yi.num[0];
    y = torus::add(p, y, torus::make(p, yi.k, std::move(num)));
  }
  return torus::apply(p, sf.V, y);
}

}  // namespace fk
