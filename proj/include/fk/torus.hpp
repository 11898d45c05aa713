#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fk/intmat.hpp"

namespace fk {

// Point of (Z/p^inf)^n: numerators over the common denominator p^k, each in
// [0, p^k), with k minimal. The prime lives with the caller.
struct TorusElt {
  int k = 0;
  std::vector<i64> num;

  std::size_t dim() const { return num.size(); }
  bool is_zero() const { return k == 0; }
  bool operator==(const TorusElt&) const = default;
  auto operator<=>(const TorusElt&) const = default;
};

namespace torus {

TorusElt zero(int n);
// Builds and normalizes numerators num / p^k (any integers).
TorusElt make(int p, int k, std::vector<i64> num);
// Coordinate i set to 1/p^k, the rest zero.
TorusElt unit(int p, int n, int i, int k);
TorusElt add(int p, const TorusElt& a, const TorusElt& b);
TorusElt neg(int p, const TorusElt& a);
TorusElt sub(int p, const TorusElt& a, const TorusElt& b);
TorusElt scale(int p, const TorusElt& a, i64 c);
// M * a for an integer matrix M with cols == dim(a).
TorusElt apply(int p, const IntMatrix& M, const TorusElt& a);
// Integer column vector x viewed as x / p^k.
TorusElt from_column(int p, const IntMatrix& col, int k);
std::string to_string(int p, const TorusElt& a);
// Solves c / d in Z/p^inf for an integer d != 0 (always solvable).
TorusElt divide(int p, const TorusElt& c, i64 d);

}  // namespace torus

// Subgroup A of (Z/p^inf)^r whose divisible part is cut out over the integers.
// Canonically represented by the Hermite form of its annihilator lattice
// Ann(A) = {y in Z^r : y.a = 0 mod 1 for all a in A}; A = ker(Ann(A)).
class TorusSub {
 public:
  TorusSub() = default;
  static TorusSub whole(int p, int r);
  static TorusSub trivial(int p, int r);
  // Divisible columns of div (r x s) plus the finite generators.
  static TorusSub from_generators(int p, int r, const IntMatrix& div, const std::vector<TorusElt>& fin);
  // ker(M) on (Z/p^inf)^cols(M).
  static TorusSub kernel(int p, const IntMatrix& M);

  int prime() const { return p_; }
  int dim() const { return r_; }
  const IntMatrix& ann() const { return ann_; }
  int rank() const { return int(free_.size()); }
  i64 finite_order() const { return finite_order_; }
  // Saturated r x rank basis of the identity component.
  IntMatrix div_basis() const;
  // rank x r integer matrix u with u * div_basis() = I.
  IntMatrix div_coords() const;
  std::vector<TorusElt> finite_gens() const;

  bool contains(const TorusElt& t) const;
  bool contains(const TorusSub& o) const;
  TorusElt signature(const TorusElt& t) const;
  // Canonical representative of t + A.
  TorusElt canon_mod(const TorusElt& t) const;
  // For a in A: canonical representative of a + A0.
  TorusElt canon_mod_identity(const TorusElt& a) const;
  // Canonical representatives of A/A0, in the order used by finite_index.
  std::vector<TorusElt> finite_reps() const;
  int finite_index(const TorusElt& a) const;
  // Coordinates of d in A0 on div_basis().
  TorusElt identity_coords(const TorusElt& d) const;

  TorusSub image(const IntMatrix& M) const;
  TorusSub sum(const TorusSub& o) const;
  TorusSub intersect(const TorusSub& o) const;
  TorusSub identity_component() const;

  bool operator==(const TorusSub& o) const { return p_ == o.p_ && r_ == o.r_ && ann_ == o.ann_; }
  bool operator<(const TorusSub& o) const { return ann_ < o.ann_; }
  std::string to_string() const;

 private:
  void finish();

  int p_ = 2, r_ = 0;
  IntMatrix ann_;
  IntMatrix V_, Vinv_;
  std::vector<int> free_;
  std::vector<int> fin_idx_;   // coordinates with a nontrivial cyclic factor
  std::vector<int> fin_exp_;   // v_p of the elementary divisor there
  std::vector<int> bounded_;   // all non-free coordinates
  std::vector<int> bounded_exp_;
  i64 finite_order_ = 1;
};

// One solution of M t = c over (Z/p^inf)^cols(M), if any exists.
std::optional<TorusElt> solve_linear(int p, const IntMatrix& M, const TorusElt& c);

}  // namespace fk
