#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fk/morphism.hpp"

namespace fk {

// An isomorphism phi: P -> R in F, taken up to R -> sRs^-1, phi -> c_s o phi.
struct IsoState {
  PSub R;
  Morphism phi;
};

class FusionSystem {
 public:
  // F_S(G) for a Sylow p-subgroup S of G (chosen deterministically, or given).
  static FusionSystem ambient(const FiniteGroup& G, int p);
  static FusionSystem ambient(const FiniteGroup& G, const ElemSet& S, int p);
  // Smallest fusion system containing the generators, closed under composition, restriction
  // and inverses. With implicit_conjugation, all S-conjugations are included too.
  // W is the declared automorphism group of the identity component.
  // Without add_inverses only the given morphisms (and their restrictions) are composed.
  static FusionSystem generated(PToralGroup S, std::vector<Morphism> gens, std::vector<IntMatrix> W,
                                bool implicit_conjugation = true, bool add_inverses = true);

  const PToralGroup& group() const;
  PSub whole() const;
  int prime() const { return group().prime(); }
  bool is_ambient() const;
  const FiniteGroup& ambient_group() const;
  // S-element i sits at ambient_embedding()[i] in G.
  const ElemSet& ambient_embedding() const;
  // Translation between subgroups of S and element sets of the ambient group.
  PSub subgroup_from_ambient(const ElemSet& H) const;
  ElemSet to_ambient(const PSub& P) const;
  const std::vector<IntMatrix>& W() const;
  const std::vector<Morphism>& generators() const;
  bool implicit_conjugation() const;

  std::vector<IsoState> iso_states(const PSub& P) const;
  // True when the closure search for P stopped at the composite-length bound.
  bool truncated(const PSub& P) const;
  // Representatives of the S-conjugacy classes inside P^F.
  std::vector<PSub> class_reps(const PSub& P) const;
  bool is_F_conjugate(const PSub& P, const PSub& Q) const;
  // Hom_F(P, Q) modulo Inn(Q), deterministic order.
  std::vector<Morphism> rep_hom(const PSub& P, const PSub& Q) const;
  // All of Hom_F(P, Q); Q must be finite.
  std::vector<Morphism> hom(const PSub& P, const PSub& Q) const;
  bool contains(const Morphism& f) const;

  struct OutGroup {
    FiniteGroup group;             // Out_F(P); element 0 is the identity class
    std::vector<Morphism> reps;    // automorphism representing each element
    ElemSet out_S;                 // image of N_S(P)
  };
  OutGroup out(const PSub& P) const;
  int out_index(const PSub& P, const Morphism& a) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct SubgroupFlags {
  bool fully_normalized = false;
  bool fully_centralized = false;
  bool fully_automized = false;
  bool receptive = false;
  bool centric = false;
  bool radical = false;
  int out_F = 0;
  int out_S = 0;
};

struct Witness {
  std::string kind;      // which condition failed
  std::string subgroup;  // rendered subgroup
  std::string detail;    // morphism or extension domain
};

// phi: Q -> P an isomorphism in F; the control subgroup N_phi <= N_S(Q).
PSub control_subgroup(const FusionSystem& F, const Morphism& phi);
// Some extension of phi to N in F with target S, if one exists.
std::optional<Morphism> find_extension(const FusionSystem& F, const Morphism& phi, const PSub& N);
// First isomorphism onto P with no extension over its control subgroup.
std::optional<Witness> receptivity_failure(const FusionSystem& F, const PSub& P);

SubgroupFlags classify(const FusionSystem& F, const PSub& P);

struct FClass {
  PSub rep;
  std::vector<PSub> members;     // family members in the class
  std::vector<PSub> s_classes;   // S-class representatives of the full class
};
std::vector<FClass> f_classes(const FusionSystem& F, const std::vector<PSub>& family);

// Increasing chain P_1 <= P_2 <= ... with union `limit` and a candidate phi: limit -> S.
struct Chain {
  std::vector<PSub> members;
  PSub limit;
  Morphism phi;
};

struct ClassReport {
  PSub rep;
  std::vector<SubgroupFlags> flags;  // one per S-class representative
  std::vector<PSub> s_classes;
};

struct SaturationReport {
  bool saturated = false;       // agreed verdict
  bool def_axioms = false;      // axioms (I), (II), (III)
  bool cor_criterion = false;   // automized + receptive representative, (III)
  bool axiom_I = true, axiom_II = true, axiom_III = true;
  bool truncated = false;
  std::vector<ClassReport> classes;
  std::vector<Witness> witnesses;
  std::string scope;            // what the quantifiers ranged over
};

SaturationReport check_saturated(const FusionSystem& F, const std::vector<PSub>& family, const std::vector<Chain>& chains = {});

// Every subgroup of a finite S.
std::vector<PSub> all_subgroups(const PToralGroup& S);

struct StarReport {
  bool star = true;
  bool star_star = true;
  std::vector<Witness> witnesses;
};
StarReport check_conditions_star(const FusionSystem& F, const std::vector<PSub>& family);

enum class Tri { False, True, Inconclusive };
std::string to_string(Tri t);

struct HReport {
  bool closed = true;          // on supplied chains
  Tri generated = Tri::True;
  bool saturated = true;
  std::vector<Witness> witnesses;
};
// H is a list of S-class representatives; `family` is the morphism domain set to test.
HReport check_H_properties(const FusionSystem& F, const std::vector<PSub>& H, const std::vector<PSub>& family,
                           const std::vector<Chain>& chains = {});

struct CriterionReport {
  bool aut_S0_finite = true;
  bool star_star = true;
  bool i = true, ii = true, iii = true, iv = true;
  bool hypotheses = false;
  std::optional<bool> direct;  // check_saturated on the same family, when run
  std::vector<Witness> witnesses;
  std::string verdict;
};
// Sufficient condition for saturation from H-generation and H-saturation plus bullet data.
// `candidates` lists subgroups of F-bullet to test for condition (iv).
CriterionReport check_saturation_criterion(const FusionSystem& F, const std::vector<PSub>& H, const std::vector<PSub>& family,
                                  const std::vector<PSub>& candidates, bool cross_check = true);

// Representatives of s with s R s^-1 <= D, modulo D on the left and C_S(R) on the right.
std::vector<Elt> transporter_reps(const PToralGroup& S, const PSub& R, const PSub& D);

bool is_in_family(const PToralGroup& S, const std::vector<PSub>& family, const PSub& P);

}  // namespace fk
