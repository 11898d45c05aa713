#include "fk/examples.hpp"

#include <algorithm>

#include "fk/groups.hpp"

namespace fk::examples {

FiniteGroup s4() { return groups::symmetric(4); }

ElemSet d8_in_s4(const FiniteGroup& G) {
  return G.closure({G.find_perm(parse_cycles("(1 2 3 4)", 4)), G.find_perm(parse_cycles("(1 3)", 4))});
}

FusionSystem d8_in_s4_system() {
  FiniteGroup G = s4();
  return FusionSystem::ambient(G, d8_in_s4(G), 2);
}

PSub ambient_subgroup(const FusionSystem& F, const std::vector<std::string>& cycles) {
  const FiniteGroup& G = F.ambient_group();
  std::vector<int> gens;
  for (const auto& c : cycles) {
    int id = G.find_perm(parse_cycles(c, G.degree()));
    if (id < 0) throw InputError("permutation not in the ambient group: " + c);
    gens.push_back(id);
  }
  return F.subgroup_from_ambient(G.closure(gens));
}

namespace {

PToralGroup z9() { return PToralGroup::finite(3, FiniteGroup::cyclic(9)); }

int z9_elt(const PToralGroup& S, int k) { return S.pi().pow(S.pi().generators().at(0), k); }

}  // namespace

PSub z9_subgroup(const FusionSystem& F, int order) {
  const auto& S = F.group();
  return sub::closure(S, {S.make(torus::zero(0), z9_elt(S, 9 / order))});
}

FusionSystem z9_system() {
  PToralGroup S = z9();
  Elt x = S.make(torus::zero(0), z9_elt(S, 3));
  Elt y = S.make(torus::zero(0), z9_elt(S, 6));
  PSub Z3 = sub::closure(S, {x});
  Morphism inv = mor::from_generators(S, Z3, Z3, {x}, {y}, IntMatrix());
  return FusionSystem::generated(S, {inv}, {});
}

std::vector<IntMatrix> sign_W() { return {IntMatrix::identity(1), IntMatrix::from_rows({{-1}})}; }

Elt dihedral_torus(const PToralGroup& S, i64 a, int k) { return S.torus_elt(torus::make(2, k, {a})); }

Elt dihedral_reflection(const PToralGroup& S, i64 a, int k) { return S.make(torus::make(2, k, {a}), 1); }

FusionSystem dihedral_inner_system() { return FusionSystem::generated(groups::infinite_dihedral(), {}, sign_W()); }

FusionSystem dihedral_so3_system() {
  PToralGroup S = groups::infinite_dihedral();
  Elt h = dihedral_torus(S, 1, 1), w = dihedral_reflection(S);
  PSub V = sub::closure(S, {h, w});
  Morphism a = mor::from_generators(S, V, V, {h, w}, {w, S.mul(h, w)}, IntMatrix());
  return FusionSystem::generated(S, {a}, sign_W());
}

FusionSystem dihedral_bad_star_system() {
  PToralGroup S = groups::infinite_dihedral();
  Elt x = dihedral_torus(S, 1, 3);
  PSub Z8 = sub::closure(S, {x});
  Morphism a = mor::from_generators(S, Z8, Z8, {x}, {dihedral_torus(S, 3, 3)}, IntMatrix());
  return FusionSystem::generated(S, {a}, sign_W());
}

std::vector<PSub> dihedral_family(const PToralGroup& S, int e) {
  std::vector<PSub> out{sub::trivial(S)};
  for (int j = 1; j <= e; ++j) out.push_back(sub::closure(S, {dihedral_torus(S, 1, j)}));
  out.push_back(sub::closure(S, {dihedral_reflection(S)}));
  for (int j = 1; j <= e; ++j) out.push_back(sub::closure(S, {dihedral_torus(S, 1, j), dihedral_reflection(S)}));
  out.push_back(sub::torus(S));
  out.push_back(sub::whole(S));
  return out;
}

}  // namespace fk::examples
