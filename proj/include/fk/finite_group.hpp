#pragma once

#include <string>
#include <vector>

#include "fk/core.hpp"

namespace fk {

using Perm = std::vector<int>;  // images of 0..n-1
using ElemSet = std::vector<int>;  // sorted element ids of a finite group

// Parses "(1 2 3)(4 5)" (1-based points) into a permutation on `degree` points.
// degree < 0 uses the largest point mentioned.
Perm parse_cycles(const std::string& text, int degree = -1);
std::string perm_to_cycles(const Perm& p);
Perm perm_mul(const Perm& a, const Perm& b);  // a after b: (ab)(x) = a(b(x))

// Finite group stored by its full multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  // Breadth-first closure of the generators; elements are numbered in discovery order.
  static FiniteGroup from_perms(const std::vector<Perm>& gens, int degree);
  // Table must be a group table with identity 0; labels optional.
  static FiniteGroup from_table(std::vector<int> table, int n, std::vector<std::string> labels = {});
  static FiniteGroup cyclic(int n);
  static FiniteGroup trivial() { return cyclic(1); }
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[std::size_t(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return 0; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int pow(int a, long long e) const;
  int element_order(int a) const;
  const std::vector<int>& generators() const { return gens_; }
  const std::string& label(int a) const { return labels_[a]; }
  // Permutation of element a, when built from permutations.
  const Perm& perm(int a) const { return perms_.at(a); }
  bool has_perms() const { return !perms_.empty(); }
  int degree() const { return degree_; }
  int find_perm(const Perm& p) const;

  // Exhaustive associativity/inverse check (tests and small groups).
  bool verify_table() const;

  // Subgroup utilities (subgroups as sorted element lists).
  ElemSet closure(const std::vector<int>& gens) const;
  ElemSet all() const;
  bool is_subgroup(const ElemSet& H) const;
  ElemSet conj_set(int g, const ElemSet& H) const;
  ElemSet normalizer(const ElemSet& H) const;
  ElemSet centralizer(const ElemSet& H) const;
  ElemSet center() const { return centralizer(all()); }
  bool contains(const ElemSet& H, int x) const;
  bool subset(const ElemSet& A, const ElemSet& B) const;
  bool is_normal(const ElemSet& N, const ElemSet& in) const;
  ElemSet intersect(const ElemSet& A, const ElemSet& B) const;
  // Elements g with g A g^-1 <= B.
  std::vector<int> transporter(const ElemSet& A, const ElemSet& B) const;
  // Sylow p-subgroup containing the p-subgroup `start` (deterministic).
  ElemSet sylow(int p, const ElemSet& start = {0}) const;
  // Largest normal p-subgroup.
  ElemSet op(int p) const;
  // Elements of p'-order forming a normal subgroup of an abelian-by-split group:
  // returns all elements whose order is prime to p.
  ElemSet p_prime_elements(int p) const;
  std::vector<ElemSet> all_subgroups() const;
  // Small generating set of H, greedy in element order.
  std::vector<int> generators_of(const ElemSet& H) const;
  // The subgroup H as a group in its own right; ids follow H's order.
  FiniteGroup subgroup_group(const ElemSet& H) const;
  // G/N for normal N; cosets numbered by smallest representative order. rep[i] is a representative.
  FiniteGroup quotient(const ElemSet& N, std::vector<int>* coset_of = nullptr, std::vector<int>* rep = nullptr) const;
  bool is_p_group(int p) const;

 private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  std::vector<Perm> perms_;
  std::vector<std::string> labels_;

  void finish();
};

bool is_prime_power(long long n, int p);
long long p_part(long long n, int p);

}  // namespace fk
