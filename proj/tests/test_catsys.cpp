#include <algorithm>
#include <set>

#include "doctest.h"
#include "fk/catsys.hpp"
#include "fk/examples.hpp"
#include "fk/groups.hpp"

using namespace fk;

namespace {

ElemSet sub_of(const FiniteGroup& G, const std::vector<std::string>& cycles) {
  std::vector<int> gens;
  for (const auto& c : cycles) gens.push_back(G.find_perm(parse_cycles(c, G.degree())));
  return G.closure(gens);
}

struct S4Fixture {
  FiniteGroup G = examples::s4();
  ElemSet S = examples::d8_in_s4(G);
  ElemSet V = sub_of(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  ElemSet Vp = sub_of(G, {"(1 3)", "(2 4)"});
  ElemSet Z4 = sub_of(G, {"(1 2 3 4)"});
  TransporterSystem T = transporter_of(G, S, {V, Vp, Z4, S}, 2);

  int obj(const ElemSet& P) const {
    for (int a = 0; a < T.num_objects(); ++a) {
      ElemSet Pg;
      for (int x : T.objects[a]) Pg.push_back(T.fusion().ambient_embedding()[x]);
      std::sort(Pg.begin(), Pg.end());
      if (Pg == P) return a;
    }
    return -1;
  }
};

FiniteGroup s4_times_z3() {
  FiniteGroup z3 = FiniteGroup::from_perms({parse_cycles("(1 2 3)", 3)}, 3);
  return FiniteGroup::direct_product(examples::s4(), z3);
}

}  // namespace

TEST_CASE("transporter category of S4 on {V, V', Z4, D8}") {
  S4Fixture f;
  const auto& C = f.T.cat;
  int v = f.obj(f.V), vp = f.obj(f.Vp), z4 = f.obj(f.Z4), s = f.obj(f.S);
  REQUIRE(v >= 0);
  REQUIRE(vp >= 0);
  REQUIRE(z4 >= 0);
  REQUIRE(s >= 0);
  // Brute force: count g in S4 with g V g^-1 <= D8, for every pair.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const ElemSet* Ps[] = {&f.V, &f.Vp, &f.Z4, &f.S};
      int ia = f.obj(*Ps[a]), ib = f.obj(*Ps[b]);
      int count = 0;
      for (int g = 0; g < f.G.order(); ++g)
        if (f.G.subset(f.G.conj_set(g, *Ps[a]), *Ps[b])) ++count;
      CHECK(int(C.hom(ia, ib).size()) == count);
    }
  CHECK(C.hom(v, s).size() == 24);
  CHECK(C.hom(vp, vp).size() == 8);
  CHECK(C.hom(z4, v).empty());
  CHECK(f.T.sylow_object() == s);
  CHECK(!C.check_laws());
  AxiomReport r = check_transporter_axioms(f.T);
  for (const auto& x : r.verdicts) CHECK_MESSAGE(x.ok, x.axiom << ": " << x.witness);
  CHECK(r.find("III") != nullptr);
}

TEST_CASE("transporter_of rejects bad object families") {
  S4Fixture f;
  CHECK_THROWS_AS(transporter_of(f.G, f.S, {f.V}, 2), InputError);           // D8 missing
  CHECK_THROWS_AS(transporter_of(f.G, f.V, {f.V}, 2), InputError);           // not Sylow
  ElemSet z = sub_of(f.G, {"(1 3)(2 4)"});
  ElemSet z2 = sub_of(f.G, {"(1 2)(3 4)"});
  ElemSet z3 = sub_of(f.G, {"(1 4)(2 3)"});
  // <(13)(24)> is conjugate to <(12)(34)> and <(14)(23)>, both inside D8.
  CHECK_THROWS_AS(transporter_of(f.G, f.S, {z, f.V, f.Vp, f.Z4, f.S}, 2), InputError);
  CHECK_NOTHROW(transporter_of(f.G, f.S, {z, z2, z3, f.V, f.Vp, f.Z4, f.S}, 2));
}

TEST_CASE("F_S(S) and the trivial group") {
  FiniteGroup D = groups::dihedral8_in_s4();
  TransporterSystem T = transporter_of(D, D.all(), {D.all()}, 2);
  CHECK(T.cat.num_morphisms() == 8);
  CHECK(check_transporter_axioms(T).ok());
  CHECK(center_of(T).size() == 2);

  FiniteGroup one = FiniteGroup::trivial();
  TransporterSystem T1 = transporter_of(one, one.all(), {one.all()}, 2);
  CHECK(T1.cat.num_objects() == 1);
  CHECK(T1.cat.num_morphisms() == 1);
  CHECK(check_transporter_axioms(T1).ok());
  CHECK(check_linking_axioms(linking_quotient(T1).L).ok());
  CHECK(center_of(T1).size() == 1);
  CHECK(isotypical_autos(T1).out_order == 1);
}

TEST_CASE("S4 x Z3: three times the morphisms, linking quotient divides by 3") {
  FiniteGroup G = s4_times_z3();
  ElemSet S = G.sylow(2);
  REQUIRE(S.size() == 8);
  std::vector<ElemSet> objs = centric_objects(G, S, 2);
  TransporterSystem T = transporter_of(G, S, objs, 2);
  FiniteGroup H = examples::s4();
  ElemSet SH = H.sylow(2);
  TransporterSystem TH = transporter_of(H, SH, centric_objects(H, SH, 2), 2);
  REQUIRE(T.num_objects() == TH.num_objects());
  CHECK(T.cat.num_morphisms() == 3 * TH.cat.num_morphisms());
  CHECK(check_transporter_axioms(T).ok());

  LinkingQuotient LQ = linking_quotient(T);
  CHECK(LQ.L.cat.num_morphisms() == TH.cat.num_morphisms());
  for (int a = 0; a < T.num_objects(); ++a) {
    CHECK(LQ.E0[a].size() == 3);
    for (int b = 0; b < T.num_objects(); ++b)
      CHECK(LQ.L.cat.hom(a, b).size() * 3 == T.cat.hom(a, b).size());
  }
  AxiomReport lr = check_linking_axioms(LQ.L);
  for (const auto& x : lr.verdicts) CHECK_MESSAGE(x.ok, x.axiom << ": " << x.witness);
  // Projection is a functor.
  for (int g = 0; g < T.cat.num_morphisms(); ++g)
    for (int h : T.cat.into(T.cat.src(g))) CHECK(LQ.proj[T.cat.compose(g, h)] == LQ.L.cat.compose(LQ.proj[g], LQ.proj[h]));

  // Without p'-part in E(P), the quotient is T itself.
  LinkingQuotient LH = linking_quotient(TH);
  CHECK(LH.L.cat.num_morphisms() == TH.cat.num_morphisms());
  CHECK(check_linking_axioms(LH.L).ok());
}

TEST_CASE("centric objects of S4 at 2") {
  S4Fixture f;
  auto objs = centric_objects(f.G, f.S, 2);
  std::set<ElemSet> got(objs.begin(), objs.end());
  CHECK(got == std::set<ElemSet>{f.V, f.Vp, f.Z4, f.S});
  CHECK(check_linking_axioms(f.T).ok());
}

TEST_CASE("morphisms are monic and epic; iso iff rho iso") {
  S4Fixture f;
  const auto& C = f.T.cat;
  int M = C.num_morphisms();
  for (int g = 0; g < M; ++g) {
    // mono: g o f1 = g o f2 => f1 = f2
    for (int a = 0; a < C.num_objects(); ++a) {
      std::set<int> seen;
      for (int f1 : C.hom(a, C.src(g))) CHECK(seen.insert(C.compose(g, f1)).second);
    }
    // epi: h1 o g = h2 o g => h1 = h2
    for (int b = 0; b < C.num_objects(); ++b) {
      std::set<int> seen;
      for (int h : C.hom(C.dst(g), b)) CHECK(seen.insert(C.compose(h, g)).second);
    }
    bool rho_iso = f.T.objects[C.src(g)].size() == f.T.objects[C.dst(g)].size();
    CHECK(f.T.is_iso(g) == rho_iso);
    CHECK((C.inverse(g) >= 0) == rho_iso);
  }
}

TEST_CASE("restriction and extension of morphisms") {
  S4Fixture f;
  const auto& C = f.T.cat;
  int v = f.obj(f.V), s = f.obj(f.S), vp = f.obj(f.Vp);
  // Every automorphism of D8 restricts to V (V is normal in N(D8) = D8, and characteristic).
  for (int m : C.hom(s, s)) {
    int r = restrict_morphism(f.T, m, v, v);
    REQUIRE(r >= 0);
    CHECK(C.compose(f.T.incl(v, s), r) == C.compose(m, f.T.incl(v, s)));
    CHECK(extend_morphism(f.T, r, s, s) == m);
  }
  // Restriction of the identity is the identity.
  CHECK(restrict_morphism(f.T, C.identity(s), vp, vp) == C.identity(vp));
  // An order-3 automorphism of V does not extend to D8.
  int order3 = -1;
  for (int m : C.hom(v, v))
    if (f.G.element_order(f.T.ambient_label[m]) == 3) order3 = m;
  REQUIRE(order3 >= 0);
  CHECK_THROWS_AS(extend_morphism(f.T, order3, s, s), InputError);
  // V does not map into V'.
  CHECK_THROWS(restrict_morphism(f.T, C.identity(s), v, vp));
}

TEST_CASE("restricting to the center of S gives the identity on rho") {
  FiniteGroup G = examples::s4();
  ElemSet S = examples::d8_in_s4(G);
  std::vector<ElemSet> all;
  for (const auto& H : G.all_subgroups())
    if (G.subset(H, S)) all.push_back(H);
  TransporterSystem T = transporter_of(G, S, all, 2);
  CHECK(check_transporter_axioms(T).ok());
  ElemSet Z = T.S.center();
  int z = T.object_of(Z);
  int s = T.sylow_object();
  REQUIRE(z >= 0);
  for (int m : T.cat.hom(s, s)) {
    int r = restrict_morphism(T, m, z, z);
    for (int x : Z) CHECK(T.rho[r][x] == x);
  }
}

TEST_CASE("T-radical objects") {
  S4Fixture f;
  CHECK(is_T_radical(f.T, f.obj(f.V)));
  CHECK(!is_T_radical(f.T, f.obj(f.Vp)));
  CHECK(!is_T_radical(f.T, f.obj(f.Z4)));
  CHECK(is_T_radical(f.T, f.obj(f.S)));
}

TEST_CASE("orbit category") {
  S4Fixture f;
  QuotientCategory O = orbit_category(f.T);
  int v = f.obj(f.V), s = f.obj(f.S);
  CHECK(O.cat.hom(v, s).size() == 3);
  CHECK(O.cat.hom(v, v).size() == 6);
  CHECK(O.cat.hom(s, s).size() == 1);
  CHECK(!O.cat.check_laws());
  std::vector<int> ids;
  FiniteGroup A = automorphism_group(O.cat, v, &ids);
  CHECK(A.order() == 6);
  CHECK(A.center().size() == 1);  // S3
}

TEST_CASE("isotypical automorphisms of the S4 linking system") {
  S4Fixture f;
  IsotypicalAutos I = isotypical_autos(f.T);
  REQUIRE(!I.autos.empty());
  CHECK(I.autos.front() == identity_auto(f.T.cat));
  CHECK(I.aut_S.size() == 8);
  for (std::size_t k = 0; k < I.aut_S.size(); ++k) {
    CHECK(I.conj[k] >= 0);
    CHECK(I.autos[I.conj[k]] == conjugation_auto(f.T, I.aut_S[k]));
  }
  // Z(L) is trivial, so c_gamma is faithful on Aut_L(S) = D8.
  CHECK(I.inner_count == 8);
  CHECK(int(I.autos.size()) == I.inner_count * I.out_order);
  CHECK(I.out_order == 1);
  // Closed under composition and inverses; each restricts to a fusion-preserving automorphism of S.
  std::set<CategoryAuto> set(I.autos.begin(), I.autos.end());
  const FusionSystem& F = f.T.fusion();
  int s = f.T.sylow_object();
  for (const auto& a : I.autos) {
    CHECK(set.count(inverse_auto(a)));
    for (const auto& b : I.autos) CHECK(set.count(compose_autos(a, b)));
    CHECK(is_isotypical(f.T, a));
    // beta(x) determined by alpha(eps_S(x)) = eps_S(beta(x)).
    std::vector<int> beta(f.T.S.order(), -1);
    for (int x = 0; x < f.T.S.order(); ++x) {
      int img = a.mor[f.T.eps_of(s, s, x)];
      for (int y = 0; y < f.T.S.order(); ++y)
        if (f.T.eps_of(s, s, y) == img) beta[x] = y;
      REQUIRE(beta[x] >= 0);
    }
    // rho(alpha(phi)) = beta rho(phi) beta^-1, so beta preserves F.
    for (int m = 0; m < f.T.cat.num_morphisms(); ++m)
      for (int x : f.T.objects[f.T.cat.src(m)]) CHECK(f.T.rho[a.mor[m]][beta[x]] == beta[f.T.rho[m][x]]);
  }
  (void)F;
}

TEST_CASE("isotypical automorphisms: one-object A4 system") {
  FiniteGroup A4 = groups::alternating(4);
  ElemSet V = A4.sylow(2);
  TransporterSystem T = transporter_of(A4, V, {V}, 2);
  IsotypicalAutos I = isotypical_autos(T);
  // Aut(A4) = S4, all of which keep V; conjugations by Aut_T(V) = A4 give Inn(A4).
  CHECK(I.autos.size() == 24);
  CHECK(I.inner_count == 12);
  CHECK(I.out_order == 2);
  CHECK(center_of(T).size() == 1);
}

TEST_CASE("center of the linking system") {
  S4Fixture f;
  // Brute-force Z(F): elements of Z(S) fixed by every morphism defined on them.
  std::vector<int> zf;
  for (int z : f.T.S.center()) {
    bool fixed = true;
    for (int m = 0; m < f.T.cat.num_morphisms(); ++m)
      if (f.T.rho[m][z] >= 0 && f.T.rho[m][z] != z) fixed = false;
    if (fixed) zf.push_back(z);
  }
  CHECK(center_of(f.T).size() == zf.size());
  CHECK(zf.size() == 1);
}

TEST_CASE("normal subsystems: the whole system and a broken one") {
  S4Fixture f;
  std::vector<int> objs(f.T.num_objects());
  for (int a = 0; a < f.T.num_objects(); ++a) objs[a] = a;
  SubsystemDatum all = full_subsystem(f.T, f.T.S.all(), objs);
  NormalityReport r = is_normal_subsystem(all, f.T);
  CHECK(r.normal);
  REQUIRE(r.quotient.has_value());
  CHECK(r.quotient->order() == 1);

  // Drop one non-inner automorphism of V: no longer closed under conjugation by Aut_T(S).
  int v = f.obj(f.V);
  SubsystemDatum broken = all;
  int drop = -1;
  for (int m : f.T.cat.hom(v, v))
    if (f.G.element_order(f.T.ambient_label[m]) == 2 && !f.G.contains(f.V, f.T.ambient_label[m])) drop = m;
  REQUIRE(drop >= 0);
  std::erase(broken.morphisms, drop);
  NormalityReport rb = is_normal_subsystem(broken, f.T);
  CHECK(!rb.normal);
  CHECK(!rb.cond_iii);
}

TEST_CASE("fault injection: each single-entry fault is caught by the named axiom") {
  S4Fixture f;
  const auto& C = f.T.cat;
  int v = f.obj(f.V), s = f.obj(f.S);
  std::vector<int> autV = C.hom(v, v);
  int a3 = -1, inner = -1;
  for (int m : autV) {
    int g = f.T.ambient_label[m];
    if (f.G.element_order(g) == 3 && a3 < 0) a3 = m;
    if (g != 0 && f.G.contains(f.V, g) && inner < 0) inner = m;
  }
  REQUIRE(a3 >= 0);
  REQUIRE(inner >= 0);

  SUBCASE("composition table") {
    TransporterSystem T = f.T;
    T.cat.set_compose(a3, a3, C.identity(v));
    CHECK(check_transporter_axioms(T).failed("associativity"));
  }
  SUBCASE("identity") {
    TransporterSystem T = f.T;
    T.cat.set_identity(v, inner);
    CHECK(check_transporter_axioms(T).failed("identity"));
  }
  SUBCASE("rho of one element") {
    TransporterSystem T = f.T;
    int x = f.T.objects[v][1];
    T.rho[a3][x] = f.T.rho[a3][f.T.objects[v][2]];
    CHECK(check_transporter_axioms(T).failed("A1"));
  }
  SUBCASE("rho of one morphism") {
    TransporterSystem T = f.T;
    T.rho[a3] = f.T.rho[C.identity(v)];
    CHECK(check_transporter_axioms(T).failed("A2"));
  }
  SUBCASE("eps of one element") {
    TransporterSystem T = f.T;
    int x = -1;
    for (int y = 0; y < T.S.order(); ++y)
      if (f.T.eps_of(v, v, y) == inner) x = y;
    T.eps[std::size_t(v) * T.num_objects() + v][x] = a3;
    CHECK(check_transporter_axioms(T).failed("B"));
  }
  SUBCASE("the prime") {
    TransporterSystem T = f.T;
    T.p = 3;
    CHECK(check_transporter_axioms(T).failed("I"));
  }
  SUBCASE("eps twisted by a p'-element") {
    FiniteGroup G = s4_times_z3();
    ElemSet S = G.sylow(2);
    TransporterSystem T = transporter_of(G, S, centric_objects(G, S, 2), 2);
    int top = T.sylow_object();
    LinkingQuotient LQ = linking_quotient(T);
    int z = LQ.E0[top][1];
    int x = 1;
    auto& e = T.eps[std::size_t(top) * T.num_objects() + top];
    e[x] = T.cat.compose(e[x], z);
    CHECK(check_transporter_axioms(T).failed("C"));
  }
  (void)s;
}

TEST_CASE("category JSON dump") {
  S4Fixture f;
  std::string j = f.T.cat.to_json();
  CHECK(j.find("\"objects\"") != std::string::npos);
  CHECK(j.find("\"composition\"") != std::string::npos);
  CHECK(j == f.T.cat.to_json());
}
