#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fk/finite_group.hpp"
#include "fk/fusion.hpp"

namespace fk {

// Finite category with opaque morphism ids and a dense composition table.
class FiniteCategory {
 public:
  FiniteCategory() = default;
  // comp(g, f) is called for every pair with src(g) == dst(f) and must return g o f.
  template <class Comp>
  static FiniteCategory build(std::vector<std::string> objects, std::vector<int> src, std::vector<int> dst,
                              std::vector<int> ident, Comp comp, std::vector<std::string> labels = {}) {
    FiniteCategory c = skeleton(std::move(objects), std::move(src), std::move(dst), std::move(ident), std::move(labels));
    for (int g = 0; g < c.num_morphisms(); ++g)
      for (int f : c.into(c.src_[g])) c.table_[std::size_t(g) * c.num_morphisms() + f] = comp(g, f);
    return c;
  }

  int num_objects() const { return int(objects_.size()); }
  int num_morphisms() const { return int(src_.size()); }
  const std::string& object_name(int a) const { return objects_[a]; }
  int src(int m) const { return src_[m]; }
  int dst(int m) const { return dst_[m]; }
  int identity(int a) const { return ident_[a]; }
  const std::string& label(int m) const { return labels_[m]; }
  // g o f; -1 when dst(f) != src(g).
  int compose(int g, int f) const { return table_[std::size_t(g) * num_morphisms() + f]; }
  int compose(int h, int g, int f) const { return compose(h, compose(g, f)); }
  const std::vector<int>& hom(int a, int b) const { return hom_[std::size_t(a) * num_objects() + b]; }
  // Morphisms with target a.
  const std::vector<int>& into(int a) const { return into_[a]; }
  const std::vector<int>& out_of(int a) const { return out_[a]; }
  // Inverse of an isomorphism, or -1.
  int inverse(int m) const;

  // Identity and associativity over all composable pairs and triples; first violation or empty.
  std::optional<std::string> check_laws() const;
  // Single-entry mutation, for fault-injection tests.
  void set_compose(int g, int f, int h) { table_[std::size_t(g) * num_morphisms() + f] = h; }
  void set_identity(int a, int m) { ident_[a] = m; }

  std::string to_json() const;

 private:
  std::vector<std::string> objects_;
  std::vector<int> src_, dst_, ident_;
  std::vector<std::string> labels_;
  std::vector<int> table_;
  std::vector<std::vector<int>> hom_, into_, out_;

  static FiniteCategory skeleton(std::vector<std::string> objects, std::vector<int> src, std::vector<int> dst,
                                 std::vector<int> ident, std::vector<std::string> labels);
};

// Group of automorphisms of object a (every endomorphism must be invertible). ids[i] is the
// morphism of group element i; element 0 is the identity.
FiniteGroup automorphism_group(const FiniteCategory& C, int a, std::vector<int>* ids);

// Transporter or linking system over a finite p-group S. Objects are subgroups of S, in
// S's own numbering; eps is the functor from the transporter category of S, rho the
// functor to the fusion system (as element maps).
struct TransporterSystem {
  int p = 2;
  FiniteGroup S;
  std::vector<ElemSet> objects;
  FiniteCategory cat;
  std::vector<std::vector<int>> eps;  // eps[a * n + b][s]: morphism for s in N_S(P_a, P_b), else -1
  std::vector<std::vector<int>> rho;  // rho[m][x]: image of x in P_src(m), -1 off P_src(m)
  // Morphism labels from an ambient group when there is one (element ids of that group).
  std::vector<int> ambient_label;
  // Optional; otherwise generated from the rho images on first use.
  mutable std::shared_ptr<const FusionSystem> fusion_system;

  int num_objects() const { return int(objects.size()); }
  int object_of(const ElemSet& P) const;  // -1 when not an object
  int eps_of(int a, int b, int s) const { return eps[std::size_t(a) * num_objects() + b][s]; }
  int incl(int a, int b) const { return eps_of(a, b, 0); }
  int sylow_object() const;  // object index of S or -1
  // E(P) = ker(Aut_T(P) -> Aut(P)).
  std::vector<int> kernel(int a) const;
  bool is_iso(int m) const;
  // Image of the object a under rho(m) for an automorphism m of a larger object.
  ElemSet image(int m, const ElemSet& P) const;
  std::string object_name(int a) const;

  // S as a rank-0 p-toral group, and a subgroup or morphism of it.
  PToralGroup group() const;
  PSub psub(const ElemSet& P) const;
  Morphism fusion_morphism(int m) const;
  // The attached fusion system, or the one generated by the rho images.
  const FusionSystem& fusion() const;
};

// T_H(G): objects are the given subgroups of the Sylow subgroup S (element ids of G);
// Mor(P, Q) = {g in G | g P g^-1 <= Q}.
TransporterSystem transporter_of(const FiniteGroup& G, const ElemSet& S, const std::vector<ElemSet>& objects, int p);
// Subgroups of S (ids of G) that are centric in F_S(G); closed under overgroups and conjugacy.
std::vector<ElemSet> centric_objects(const FiniteGroup& G, const ElemSet& S, int p);

struct AxiomVerdict {
  std::string axiom;
  bool ok = true;
  std::string witness;
};
struct AxiomReport {
  std::vector<AxiomVerdict> verdicts;
  std::string note;
  bool ok() const;
  bool failed(const std::string& axiom) const;
  const AxiomVerdict* find(const std::string& axiom) const;
};

// Verdicts for identity, associativity, A1, A2, B, C, I, II, III.
AxiomReport check_transporter_axioms(const TransporterSystem& T);
// Verdicts for identity, associativity, objects (each object isomorphic to a fully centralized
// one), A, B, C.
AxiomReport check_linking_axioms(const TransporterSystem& L);

struct LinkingQuotient {
  TransporterSystem L;
  std::vector<int> proj;                 // morphism of T -> morphism of L
  std::vector<std::vector<int>> E0;      // per object, morphisms of T
};
// Divides every Mor_T(P, Q) by the p'-part E0(P) of E(P). Throws StructureError when E(P)
// does not split as eps(Z(P)) x E0(P).
LinkingQuotient linking_quotient(const TransporterSystem& T);

// The unique psi_* in Mor(a_star, b_star) with incl o psi_* = psi o incl.
int restrict_morphism(const TransporterSystem& T, int psi, int a_star, int b_star);
// The unique extension of psi to Mor(a_bar, b_bar); InputError when there is none.
int extend_morphism(const TransporterSystem& T, int psi, int a_bar, int b_bar);

// O_p(Aut_T(P)) = eps_P(P).
bool is_T_radical(const TransporterSystem& T, int a);

struct QuotientCategory {
  FiniteCategory cat;
  std::vector<int> proj;
};
// Mor(P, Q) / eps_Q(Q), composition induced (checked well defined).
QuotientCategory orbit_category(const TransporterSystem& T);

// Functor that is a bijection on objects and morphisms.
struct CategoryAuto {
  std::vector<int> obj;
  std::vector<int> mor;
  bool operator==(const CategoryAuto&) const = default;
  auto operator<=>(const CategoryAuto&) const = default;
};
CategoryAuto compose_autos(const CategoryAuto& a, const CategoryAuto& b);  // a after b
CategoryAuto inverse_auto(const CategoryAuto& a);
CategoryAuto identity_auto(const FiniteCategory& C);

// c_gamma for gamma in Aut_L(S): P -> gamma(P), phi -> gamma phi gamma^-1 with restrictions.
CategoryAuto conjugation_auto(const TransporterSystem& L, int gamma);
// Sends every eps_P(P) onto eps_{alpha P}(alpha P) and inclusions to inclusions.
bool is_isotypical(const TransporterSystem& L, const CategoryAuto& a, std::string* why = nullptr);
bool is_functor(const FiniteCategory& C, const CategoryAuto& a, std::string* why = nullptr);

struct IsotypicalAutos {
  std::vector<CategoryAuto> autos;  // sorted; identity first
  std::vector<int> aut_S;           // morphism ids of Aut_L(S)
  std::vector<int> conj;            // index in autos of c_gamma, parallel to aut_S
  int inner_count = 0;              // |{c_gamma}|
  int out_order = 0;                // |Out_typ(L)|
  long nodes = 0;                   // backtracking nodes used
  int index_of(const CategoryAuto& a) const;  // -1 when absent
};
// Exhaustive search: object permutations fixing S and preserving hom-set sizes, then images of
// a generating set of morphisms. Throws BoundExceeded past bounds().functor_search nodes.
IsotypicalAutos isotypical_autos(const TransporterSystem& L);

// chi in Aut_L(S) with c_chi = Id.
std::vector<int> center_of(const TransporterSystem& L);

// A subsystem given inside T: the subgroup Sbar and object/morphism ids of T.
struct SubsystemDatum {
  ElemSet Sbar;
  std::vector<int> objects;
  std::vector<int> morphisms;
};
struct NormalityReport {
  bool subcategory = false;
  bool cond_i = false, cond_ii = false, cond_iii = false;
  std::vector<std::string> witnesses;
  bool normal = false;
  int aut_T = 0, aut_sub = 0;  // |Aut_T(Sbar)|, |Aut_sub(Sbar)|
  std::optional<FiniteGroup> quotient;  // Aut_T(Sbar) / Aut_sub(Sbar) when normal
};
NormalityReport is_normal_subsystem(const SubsystemDatum& sub, const TransporterSystem& T);
// The full subcategory on the given objects with all their morphisms.
SubsystemDatum full_subsystem(const TransporterSystem& T, const ElemSet& Sbar, const std::vector<int>& objects);

}  // namespace fk
