#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fk/fusion.hpp"

namespace fk {

// A subgroup K of Aut(Q), given by a kind or by generators.
struct AutSubgroupK {
  enum class Kind { Trivial, All, InnerS, Generated };
  PSub Q;
  Kind kind = Kind::All;
  std::vector<Morphism> gens;  // automorphisms of Q, for Kind::Generated

  static AutSubgroupK trivial(const PSub& Q) { return {Q, Kind::Trivial, {}}; }
  static AutSubgroupK all(const PSub& Q) { return {Q, Kind::All, {}}; }
  // Aut_S(Q), the automorphisms induced by N_S(Q).
  static AutSubgroupK inner_S(const PSub& Q) { return {Q, Kind::InnerS, {}}; }
  // Checks the generators and closes them inside Aut(Q).
  static AutSubgroupK generated(const PToralGroup& S, const PSub& Q, std::vector<Morphism> gens);

  bool contains(const PToralGroup& S, const Morphism& a) const;
  std::string describe() const;
};

// Membership test for an automorphism of a fixed subgroup.
using AutPredicate = std::function<bool(const Morphism&)>;

// {x in N_S(Q) | c_x in K}.
PSub k_normalizer(const PToralGroup& S, const PSub& Q, const AutSubgroupK& K);
PSub k_normalizer(const PToralGroup& S, const PSub& Q, const AutPredicate& in_K);

struct KFlags {
  bool fully_K_normalized = false;
  bool fully_K_automized = false;
  Order n_K;                // |N_S^K(Q)|
  int aut_F_K = 0;          // |Aut_F^K(Q)|
  int aut_S_K = 0;          // |Aut_S^K(Q)|
  std::vector<Witness> witnesses;
};
// Q must be finite.
KFlags classify_K(const FusionSystem& F, const PSub& Q, const AutSubgroupK& K);

// N_F^K(Q) as a fusion system over N = N_S^K(Q). When N = S the system lives over S itself;
// a finite proper N is renumbered as a group of its own. Positive-rank proper N is refused.
struct NormalizerSystem {
  PSub N;                  // inside S
  bool renumbered = false;
  std::vector<Elt> elems;  // N-element i is elems[i] in S (renumbered case)
  FusionSystem system;

  PSub to_sub(const PToralGroup& S, const PSub& P) const;  // P <= N inside S -> subgroup of N
  PSub from_sub(const PToralGroup& S, const PSub& P) const;
  Morphism to_sub(const PToralGroup& S, const Morphism& f) const;
  Morphism from_sub(const PToralGroup& S, const Morphism& f) const;
};
// Generators are the F-morphisms P -> N with Q <= P <= N, fixing Q and restricting into K.
// P runs over every subgroup of N when N is finite, otherwise over the members of `family`.
NormalizerSystem normalizer_system(const FusionSystem& F, const PSub& Q, const AutSubgroupK& K,
                                   const std::vector<PSub>& family = {});

// For phi: R -> Q an isomorphism in F with Q fully K-normalized: some chi in Aut_F^K(Q) and an
// extension of chi o phi to N_S^{K^phi}(R) R, where K^phi = phi^-1 K phi.
struct KExtension {
  Morphism chi;
  Morphism extension;
};
std::optional<KExtension> k_extension(const FusionSystem& F, const Morphism& phi, const AutSubgroupK& K);

// Morphism sets of two systems over groups with the same numbering agree on every pair.
bool same_morphisms(const FusionSystem& A, const FusionSystem& B, std::string* why = nullptr);

struct NormalizerReport {
  bool applicable = false;      // F saturated and Q fully K-normalized
  std::string note;
  PSub N;
  KFlags flags;
  SaturationReport saturation;  // of N_F^K(Q) over all subgroups of N
};
// Builds N_F^K(Q) and checks it; the family is the one handed to check_saturated when N is
// infinite (for finite N every subgroup is checked).
NormalizerReport check_normalizer_saturated(const FusionSystem& F, const PSub& Q, const AutSubgroupK& K,
                                            std::optional<bool> F_saturated = std::nullopt,
                                            const std::vector<PSub>& family = {});

}  // namespace fk
