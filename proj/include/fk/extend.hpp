#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fk/catsys.hpp"

namespace fk {

// Extension of a linking system L over Sbar by a finite group G: a group hat containing
// Gamma = Aut_L(Sbar) as a normal subgroup with hat/Gamma = G, and tau: hat -> Aut_typ(L).
struct ExtensionPair {
  TransporterSystem L;
  IsotypicalAutos autos;    // of L
  FiniteGroup hat;
  std::vector<int> gamma;   // gamma[k]: element of hat for the automorphism autos.aut_S[k]
  FiniteGroup G;
  std::vector<int> rho;     // hat -> G
  std::vector<int> tau;     // hat -> index into autos.autos
  std::vector<int> t_U;     // regular section G -> hat; empty means section() picks one

  // Inverse of gamma on hat; -1 off Gamma.
  std::vector<int> gamma_index() const;
  // t_U when set, else the smallest element over each g in G; section()[0] = 1 either way.
  std::vector<int> section() const;
};

// First violated condition: gamma/rho/tau homomorphisms, Gamma = ker(rho), tau on Gamma equals
// gamma -> c_gamma, and conjugation in hat on Gamma matches tau acting on Aut_L(Sbar).
std::optional<std::string> extension_pair_violation(const ExtensionPair& U);
// Returns U, or throws StructureError naming the violation.
ExtensionPair validate_extension_pair(ExtensionPair U);

// Isomorphism theta: A.hat -> B.hat of extensions of the same L, compatible with gamma, rho and tau.
std::optional<std::string> check_pair_iso(const ExtensionPair& A, const ExtensionPair& B, const std::vector<int>& theta);
// The automorphisms autos as a group (element i is autos[i]).
FiniteGroup autos_group(const IsotypicalAutos& A);

// Gamma x G with tau(a, g) = c_a, i.e. G acting trivially on L.
ExtensionPair trivial_extension(const TransporterSystem& L, const IsotypicalAutos& autos, const FiniteGroup& G);

// Morphisms [[phi, gamma]] stored by the representative with gamma = section()[g].
struct LUCategory {
  FiniteCategory cat;
  std::vector<int> phi;      // morphism of L from section(g)(P) to Q
  std::vector<int> g;        // element of G
  std::vector<int> section;  // G -> hat
  int num_L_morphisms = 0;
  std::vector<int> lookup;   // phi * |G| + g -> id
  // restr[k][a]: aut_S[k] restricted to object a -> its image.
  std::vector<std::vector<int>> restr;
  std::vector<int> gamma_of_hat;

  int id_of(int phi_, int g_) const { return lookup[std::size_t(phi_) * section.size() + g_]; }
};

LUCategory build_LU(const ExtensionPair& U);
// The class of (phi, gh) for phi in Mor_L(gh(P), Q) and any gh in hat.
int lu_class(const ExtensionPair& U, const LUCategory& LU, int phi, int gh);
// [[psi, eta]] o [[phi, gamma]] = [[psi o tau(eta)(phi), eta gamma]], computed on raw pairs.
int lu_compose_pairs(const ExtensionPair& U, const LUCategory& LU, int psi, int eta, int phi, int gamma);
// First pair of morphisms violating left or right cancellation.
std::optional<std::string> check_mono_epi(const FiniteCategory& C);

// The pair realizing Gbar normal in Ghat: L = linking quotient of the centric transporter
// system of Gbar, hat = N_Ghat(Sbar)/E0(Sbar), tau by conjugation.
struct GroupExtensionPair {
  ExtensionPair U;
  FiniteGroup ambient;
  ElemSet normal;                     // Gbar as elements of ambient
  std::vector<int> hat_to_ambient;    // a representative in N_Ghat(Sbar) for each hat element
  std::vector<int> Sbar_to_ambient;   // L's Sbar elements in ambient
};
GroupExtensionPair canonical_pair_from_group_extension(const FiniteGroup& Ghat, const ElemSet& Gbar, int p);

struct Claim {
  std::string name;
  bool ok = false;
  std::string detail;
};

// L1 = L_U, then T over a Sylow S of hat with Mor_T(P, Q) the morphisms of L1 between
// P cap Sbar and Q cap Sbar that carry delta1(P) into delta1(Q), then F generated by rho_T.
struct ExtensionResult {
  LUCategory LU;
  TransporterSystem T;               // over S; its fusion() is F
  std::vector<int> S_in_hat;         // S-element i is hat element S_in_hat[i]
  std::vector<int> Sbar_to_S;        // L's Sbar elements in S
  ElemSet Sbar;                      // in S ids
  std::vector<int> L_objects_in_T;   // object of T for each object of L
  std::vector<int> L_morphisms_in_T; // [[phi, 1]] for each morphism phi of L
  std::vector<int> hat_in_T;         // [[id_Sbar, h]] for each h in hat, as a morphism of T
  NormalityReport normality;
  std::vector<Claim> claims;         // transporter axioms, objects, aut, conjugation, normal, saturated
  bool ok() const;
};
ExtensionResult build_extension(const ExtensionPair& U);

}  // namespace fk
