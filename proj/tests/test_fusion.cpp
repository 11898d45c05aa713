#include <numeric>
#include <set>

#include "doctest.h"
#include "fk/bullet.hpp"
#include "fk/examples.hpp"
#include "fk/groups.hpp"

using namespace fk;

namespace {

// Subgroups of D8 up to S4-conjugacy, computed straight from S4.
std::vector<std::set<ElemSet>> brute_classes(const FiniteGroup& G, const ElemSet& S) {
  std::vector<ElemSet> subs;
  for (const auto& H : G.all_subgroups())
    if (G.subset(H, S)) subs.push_back(H);
  std::vector<std::set<ElemSet>> classes;
  for (const auto& H : subs) {
    bool placed = false;
    for (auto& c : classes) {
      const ElemSet& K = *c.begin();
      for (int g = 0; g < G.order() && !placed; ++g)
        if (G.conj_set(g, K) == H) {
          c.insert(H);
          placed = true;
        }
      if (placed) break;
    }
    if (!placed) classes.push_back({H});
  }
  return classes;
}

bool brute_centric(const FiniteGroup& G, const ElemSet& S, const ElemSet& P) {
  for (int g = 0; g < G.order(); ++g) {
    ElemSet Q = G.conj_set(g, P);
    if (!G.subset(Q, S)) continue;
    if (!G.subset(G.intersect(G.centralizer(Q), S), Q)) return false;
  }
  return true;
}

bool brute_radical(const FiniteGroup& G, const ElemSet& P) {
  ElemSet N = G.normalizer(P);
  std::vector<int> gens(P.begin(), P.end());
  for (int c : G.centralizer(P)) gens.push_back(c);
  ElemSet M = G.closure(gens);
  FiniteGroup NG = G.subgroup_group(N);
  ElemSet Mi;
  for (int x : M) Mi.push_back(int(std::lower_bound(N.begin(), N.end(), x) - N.begin()));
  std::sort(Mi.begin(), Mi.end());
  return NG.quotient(Mi).op(2).size() == 1;
}

}  // namespace

TEST_CASE("F-classes of D8 in S4 agree with conjugation in S4") {
  FusionSystem F = examples::d8_in_s4_system();
  const auto& G = F.ambient_group();
  ElemSet S = examples::d8_in_s4(G);
  auto family = all_subgroups(F.group());
  CHECK(family.size() == 10);
  auto classes = f_classes(F, family);
  auto oracle = brute_classes(G, S);
  CHECK(classes.size() == 7);
  CHECK(oracle.size() == classes.size());
  for (const auto& c : classes) {
    std::set<ElemSet> mine;
    for (const auto& m : c.members) mine.insert(F.to_ambient(m));
    CHECK(std::find(oracle.begin(), oracle.end(), mine) != oracle.end());
  }
}

TEST_CASE("centric and radical subgroups of D8 in S4") {
  FusionSystem F = examples::d8_in_s4_system();
  const auto& G = F.ambient_group();
  ElemSet S = examples::d8_in_s4(G);
  std::set<ElemSet> centric, radical;
  for (const auto& P : all_subgroups(F.group())) {
    auto fl = classify(F, P);
    ElemSet Pa = F.to_ambient(P);
    CHECK(fl.centric == brute_centric(G, S, Pa));
    if (fl.centric) {
      CHECK(fl.radical == brute_radical(G, Pa));
      centric.insert(Pa);
      if (fl.radical) radical.insert(Pa);
    }
  }
  PSub V = examples::ambient_subgroup(F, {"(1 2)(3 4)", "(1 3)(2 4)"});
  PSub V2 = examples::ambient_subgroup(F, {"(1 3)", "(2 4)"});
  PSub C4 = examples::ambient_subgroup(F, {"(1 2 3 4)"});
  std::set<ElemSet> want_c = {F.to_ambient(V), F.to_ambient(V2), F.to_ambient(C4), S};
  std::set<ElemSet> want_r = {F.to_ambient(V), S};
  CHECK(centric == want_c);
  CHECK(radical == want_r);

  auto fv = classify(F, V);
  CHECK(fv.fully_normalized);
  CHECK(fv.out_F == 6);
  auto fv2 = classify(F, V2);
  CHECK(fv2.out_F == 2);
  CHECK_FALSE(fv2.radical);
}

TEST_CASE("saturation of D8 in S4") {
  FusionSystem F = examples::d8_in_s4_system();
  auto rep = check_saturated(F, all_subgroups(F.group()));
  CHECK(rep.saturated);
  CHECK(rep.def_axioms);
  CHECK(rep.cor_criterion);
  CHECK(rep.witnesses.empty());
}

TEST_CASE("inner fusion system of D8 is saturated") {
  FusionSystem A = examples::d8_in_s4_system();
  FusionSystem F = FusionSystem::generated(A.group(), {}, {});
  auto rep = check_saturated(F, all_subgroups(F.group()));
  CHECK(rep.saturated);
  // classes are the S-classes; hom into S is one inclusion up to conjugation
  for (const auto& P : all_subgroups(F.group())) {
    CHECK(F.class_reps(P).size() == 1);
    CHECK(F.rep_hom(P, F.whole()).size() == 1);
  }
}

TEST_CASE("Z/9 with inversion on Z/3 is not saturated") {
  FusionSystem F = examples::z9_system();
  PSub Z3 = examples::z9_subgroup(F, 3);
  auto classes = f_classes(F, all_subgroups(F.group()));
  CHECK(classes.size() == 3);
  for (const auto& c : classes)
    if (c.rep == Z3) CHECK(c.members.size() == 1);
  auto fl = classify(F, Z3);
  CHECK(fl.fully_automized);
  CHECK(fl.fully_centralized);
  CHECK_FALSE(fl.receptive);
  CHECK(control_subgroup(F, F.out(Z3).reps.at(1)) == F.whole());
  auto rep = check_saturated(F, all_subgroups(F.group()));
  CHECK_FALSE(rep.saturated);
  CHECK_FALSE(rep.def_axioms);
  CHECK_FALSE(rep.cor_criterion);
  bool at_z3 = false;
  for (const auto& w : rep.witnesses)
    if (w.kind.find("receptive") != std::string::npos && w.subgroup == sub::to_string(F.group(), Z3)) at_z3 = true;
  CHECK(at_z3);
}

TEST_CASE("morphism sets in D8 in S4") {
  FusionSystem F = examples::d8_in_s4_system();
  const auto& S = F.group();
  PSub V = examples::ambient_subgroup(F, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK(F.rep_hom(V, V).size() == 6);
  CHECK(F.hom(V, V).size() == 6);
  CHECK(F.out(F.whole()).group.order() == 1);
  // every hom is conjugation by some element of S4
  const auto& G = F.ambient_group();
  for (const auto& P : all_subgroups(S)) {
    auto homs = F.hom(P, F.whole());
    auto oracle = hom_search(G, F.to_ambient(P), examples::d8_in_s4(G), HomConstraint::AmbientConjugation);
    CHECK(homs.size() == oracle.size());
    for (const auto& f : homs) {
      CHECK(F.contains(f));
      CHECK(mor::is_injective(S, f));
    }
  }
}

TEST_CASE("saturation lemmas hold class by class") {
  for (auto F : {examples::d8_in_s4_system(), examples::dihedral_so3_system(), examples::dihedral_inner_system()}) {
    const auto& S = F.group();
    std::vector<PSub> family = S.is_finite() ? all_subgroups(S) : examples::dihedral_family(S, 4);
    for (const auto& c : f_classes(F, family)) {
      int fully_normalized = 0;
      for (const auto& R : c.s_classes) {
        auto fl = classify(F, R);
        if (fl.receptive) CHECK(fl.fully_centralized);
        if (fl.fully_automized && fl.receptive) CHECK(fl.fully_normalized);
        if (fl.fully_normalized) ++fully_normalized;
      }
      CHECK(std::gcd(fully_normalized, S.prime()) == 1);
    }
  }
}

TEST_CASE("extensions agree on centric normal subgroups up to the center") {
  FusionSystem F = examples::d8_in_s4_system();
  const auto& S = F.group();
  auto subs = all_subgroups(S);
  for (const auto& P : subs)
    for (const auto& Q : subs) {
      if (!sub::is_normal_in(S, Q, P) || !classify(F, Q).centric) continue;
      auto homs = F.hom(P, F.whole());
      PSub Z = center(S, Q);
      for (const auto& a : homs)
        for (const auto& b : homs) {
          Morphism ra = mor::restrict(S, a, Q, F.whole()), rb = mor::restrict(S, b, Q, F.whole());
          if (!ra.same_map(rb)) continue;
          bool found = false;
          for (const auto& x : sub::elements(S, Z))
            if (mor::compose(S, a, mor::conjugation(S, x, P, P)).same_map(b)) found = true;
          CHECK(found);
        }
    }
}

TEST_CASE("H-generation and the saturation criterion") {
  FusionSystem F = examples::d8_in_s4_system();
  auto all = all_subgroups(F.group());
  std::vector<PSub> centric;
  for (const auto& P : all)
    if (classify(F, P).centric) centric.push_back(P);
  CHECK(check_H_properties(F, centric, all).generated == Tri::True);
  CHECK(check_H_properties(F, all, all).generated == Tri::True);
  auto only_s = check_H_properties(F, {F.whole()}, all);
  CHECK(only_s.generated == Tri::False);
  REQUIRE_FALSE(only_s.witnesses.empty());
  PSub V = examples::ambient_subgroup(F, {"(1 2)(3 4)", "(1 3)(2 4)"});
  bool at_v = false;
  for (const auto& w : only_s.witnesses) at_v = at_v || w.subgroup == sub::to_string(F.group(), V);
  CHECK(at_v);
  // an automorphism of V of order 3 is among the missing ones
  FusionSystem inner = FusionSystem::generated(F.group(), {}, {});
  int missing = 0, order3 = 0;
  for (const auto& a : F.hom(V, V))
    if (!inner.contains(a)) {
      ++missing;
      Morphism a3 = mor::compose(F.group(), a, mor::compose(F.group(), a, a));
      if (a3.same_map(mor::identity(F.group(), V))) ++order3;
    }
  CHECK(missing == 4);
  CHECK(order3 == 2);

  auto crit = check_saturation_criterion(F, centric, all, all);
  CHECK(crit.hypotheses);
  REQUIRE(crit.direct.has_value());
  CHECK(*crit.direct);

  FusionSystem Z = examples::z9_system();
  auto zall = all_subgroups(Z.group());
  auto zc = check_saturation_criterion(Z, {Z.whole(), examples::z9_subgroup(Z, 3)}, zall, zall);
  CHECK_FALSE(zc.ii);
  CHECK_FALSE(zc.hypotheses);
}

TEST_CASE("conditions on torus morphisms") {
  FusionSystem F = examples::d8_in_s4_system();
  auto r = check_conditions_star(F, all_subgroups(F.group()));
  CHECK(r.star);
  CHECK(r.star_star);

  FusionSystem so3 = examples::dihedral_so3_system();
  auto fam = examples::dihedral_family(so3.group(), 4);
  auto s = check_conditions_star(so3, fam);
  CHECK(s.star);
  CHECK(s.star_star);

  FusionSystem bad = examples::dihedral_bad_star_system();
  auto b = check_conditions_star(bad, examples::dihedral_family(bad.group(), 4));
  CHECK_FALSE(b.star);
  CHECK_FALSE(b.star_star);
  REQUIRE_FALSE(b.witnesses.empty());
}

TEST_CASE("infinite dihedral systems") {
  FusionSystem inner = examples::dihedral_inner_system();
  const auto& S = inner.group();
  auto fam = examples::dihedral_family(S, 4);
  auto r = check_saturated(inner, fam);
  CHECK(r.saturated);

  FusionSystem so3 = examples::dihedral_so3_system();
  PSub z2 = sub::closure(S, {examples::dihedral_torus(S, 1, 1)});
  PSub refl = sub::closure(S, {examples::dihedral_reflection(S)});
  CHECK(so3.is_F_conjugate(z2, refl));
  CHECK_FALSE(inner.is_F_conjugate(z2, refl));
  PSub V = sub::closure(S, {examples::dihedral_torus(S, 1, 1), examples::dihedral_reflection(S)});
  CHECK(so3.out(V).group.order() == 6);
  auto fl = classify(so3, z2);
  CHECK(fl.fully_centralized);
  CHECK(fl.receptive);
  auto rs = check_saturated(so3, fam);
  CHECK(rs.saturated);
  CHECK(rs.witnesses.empty());
}

TEST_CASE("saturation criterion on the truncated infinite dihedral system") {
  FusionSystem F = examples::dihedral_so3_system();
  const auto& S = F.group();
  auto fam = examples::dihedral_family(S, 6);
  Elt quarter = examples::dihedral_torus(S, 1, 2);
  PSub V = sub::closure(S, {examples::dihedral_torus(S, 1, 1), examples::dihedral_reflection(S)});
  std::vector<PSub> H{V};
  for (const auto& P : fam)
    if (sub::contains(S, P, quarter)) H.push_back(P);
  auto ctx = BulletContext::make(S, F.W());
  auto candidates = f_bullet(F, ctx, fam);
  auto rep = check_saturation_criterion(F, H, fam, candidates);
  for (const auto& w : rep.witnesses) MESSAGE(w.kind << " " << w.subgroup << " " << w.detail);
  CHECK(rep.hypotheses);
  REQUIRE(rep.direct.has_value());
  CHECK(*rep.direct);
}
