#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fk/finite_group.hpp"
#include "fk/torus.hpp"

namespace fk {

// Element (t, g) of T x| pi with (t,g)(u,h) = (t + rho(g)u, gh).
struct Elt {
  TorusElt t;
  int g = 0;
  bool operator==(const Elt&) const = default;
  auto operator<=>(const Elt&) const = default;
};

// (rank of identity component, number of components), compared lexicographically.
struct Order {
  int rank = 0;
  i64 count = 1;
  bool operator==(const Order&) const = default;
  auto operator<=>(const Order&) const = default;
  std::string to_string() const;
};

// Split discrete p-toral group (Z/p^inf)^r x| pi. A finite p-group is the case r = 0.
class PToralGroup {
 public:
  PToralGroup() = default;
  // action[i] is rho of element gen_ids[i]; the ids must generate pi.
  PToralGroup(int p, int rank, FiniteGroup pi, const std::vector<int>& gen_ids, const std::vector<IntMatrix>& action);
  static PToralGroup finite(int p, FiniteGroup g);

  int prime() const { return p_; }
  int rank() const { return r_; }
  bool is_finite() const { return r_ == 0; }
  const FiniteGroup& pi() const { return pi_; }
  const IntMatrix& rho(int g) const { return rho_[g]; }

  Elt identity() const { return {torus::zero(r_), 0}; }
  Elt make(TorusElt t, int g) const { return {std::move(t), g}; }
  Elt torus_elt(TorusElt t) const { return {std::move(t), 0}; }
  Elt mul(const Elt& a, const Elt& b) const;
  Elt inv(const Elt& a) const;
  Elt conj(const Elt& x, const Elt& y) const;  // x y x^-1
  Elt pow(const Elt& a, i64 n) const;
  int element_order_exp(const Elt& a) const;  // log_p of the order; throws past the denominator bound
  std::string to_string(const Elt& a) const;

 private:
  int p_ = 2, r_ = 0;
  FiniteGroup pi_;
  std::vector<IntMatrix> rho_;
};

// Subgroup P of S: pi-image H, torus part A = P n T, and tau[i] with (tau[i], H[i]) in P,
// each tau[i] reduced modulo A. The triple is canonical.
struct PSub {
  std::vector<int> H;
  TorusSub A;
  std::vector<TorusElt> tau;

  Order order() const { return {A.rank(), i64(H.size()) * A.finite_order()}; }
  bool is_finite() const { return A.rank() == 0; }
  int index_of(int h) const;  // position of h in H or -1
  const TorusElt& tau_of(int h) const;
  bool operator==(const PSub& o) const { return H == o.H && A == o.A && tau == o.tau; }
  bool operator<(const PSub& o) const;
};

namespace sub {

PSub whole(const PToralGroup& S);
PSub trivial(const PToralGroup& S);
PSub torus(const PToralGroup& S);  // T itself
// Subgroup generated by the elements and the divisible subgroup spanned by the columns of div.
PSub closure(const PToralGroup& S, const std::vector<Elt>& gens, const IntMatrix& div = IntMatrix());
PSub join(const PToralGroup& S, const PSub& P, const PSub& Q);
PSub intersect(const PToralGroup& S, const PSub& P, const PSub& Q);
// Subgroup of the finite group pi lifted with zero torus part (only for finite S).
PSub from_pi(const PToralGroup& S, const ElemSet& H);

bool contains(const PToralGroup& S, const PSub& P, const Elt& x);
bool contains(const PToralGroup& S, const PSub& P, const PSub& Q);  // Q <= P
bool is_normal_in(const PToralGroup& S, const PSub& Q, const PSub& P);

// Finite generators; together with A.div_basis() they generate P.
std::vector<Elt> generators(const PToralGroup& S, const PSub& P);
// Canonical representatives of P/P0, in index order.
std::vector<Elt> pi0_reps(const PToralGroup& S, const PSub& P);
// x = (d, 1) * rep with d in P0; returns (rep index, d).
std::pair<int, TorusElt> decompose(const PToralGroup& S, const PSub& P, const Elt& x);
// All elements of a finite subgroup.
std::vector<Elt> elements(const PToralGroup& S, const PSub& P);
// Elements whose identity-component part has exponent <= p^e.
std::vector<Elt> elements_bounded(const PToralGroup& S, const PSub& P, int e);

PSub conjugate(const PToralGroup& S, const Elt& x, const PSub& P);
PSub power_subgroup(const PToralGroup& S, const PSub& P, int m);
// Left coset representatives of M in N (finite index required).
std::vector<Elt> coset_reps(const PToralGroup& S, const PSub& N, const PSub& M);

std::string to_string(const PToralGroup& S, const PSub& P);

}  // namespace sub

// Constraints on a conjugating element s = (t, g) of S. Solved exactly: a finite search
// over g and an integer linear system over the torus for t.
struct ConjProblem {
  std::vector<std::pair<Elt, Elt>> fix;              // c_s(x) = y
  std::vector<std::pair<IntMatrix, IntMatrix>> lin;  // rho(g) X = Y
  std::vector<std::pair<PSub, PSub>> into;           // c_s(X) <= Y
  std::optional<PSub> within;                        // s in R
};

// Solutions with pi-part g form t0 + K.
struct ConjCoset {
  int g = 0;
  TorusElt t0;
  TorusSub K;
};

std::vector<ConjCoset> solve_conj(const PToralGroup& S, const ConjProblem& prob, bool first_only = false);
std::optional<Elt> find_conjugator(const PToralGroup& S, const ConjProblem& prob);
// The solution set of a problem which is known to be a subgroup.
PSub subgroup_from_cosets(const PToralGroup& S, const std::vector<ConjCoset>& cosets);

PSub normalizer(const PToralGroup& S, const PSub& P);
PSub centralizer(const PToralGroup& S, const PSub& P);
PSub center(const PToralGroup& S, const PSub& P);
std::vector<ConjCoset> transporter(const PToralGroup& S, const PSub& P, const PSub& Q);
// Some s with s P s^-1 = Q.
std::optional<Elt> conjugator(const PToralGroup& S, const PSub& P, const PSub& Q);

}  // namespace fk
