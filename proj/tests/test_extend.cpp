#include <algorithm>
#include <set>

#include "doctest.h"
#include "fk/examples.hpp"
#include "fk/extend.hpp"
#include "fk/groups.hpp"

using namespace fk;

namespace {

ElemSet a4_in_s4(const FiniteGroup& G) {
  return G.closure({G.find_perm(parse_cycles("(1 2 3)", 4)), G.find_perm(parse_cycles("(1 2)(3 4)", 4))});
}

const GroupExtensionPair& a4_s4() {
  static const GroupExtensionPair P = [] {
    FiniteGroup G = examples::s4();
    return canonical_pair_from_group_extension(G, a4_in_s4(G), 2);
  }();
  return P;
}

const ExtensionResult& a4_s4_result() {
  static const ExtensionResult R = build_extension(a4_s4().U);
  return R;
}

// Maps of every Hom_F(P, Q), as element tables in S numbering.
std::set<std::vector<int>> fusion_maps(const FusionSystem& F, const PToralGroup& S, const PSub& P, const PSub& Q) {
  std::set<std::vector<int>> out;
  for (const Morphism& f : F.hom(P, Q)) {
    std::vector<int> m;
    for (int x : P.H) m.push_back(mor::eval(S, f, S.make(torus::zero(0), x)).g);
    out.insert(m);
  }
  return out;
}

}  // namespace

TEST_CASE("A4 in S4: the canonical pair") {
  const GroupExtensionPair& P = a4_s4();
  const ExtensionPair& U = P.U;
  CHECK(U.L.S.order() == 4);
  CHECK(U.L.num_objects() == 1);
  CHECK(U.L.cat.num_morphisms() == 12);
  CHECK(U.hat.order() == 24);
  CHECK(U.G.order() == 2);
  CHECK(!extension_pair_violation(U));
  CHECK(U.section()[0] == 0);
}

TEST_CASE("extension pair violations are named") {
  ExtensionPair U = a4_s4().U;
  SUBCASE("tau twisted on the non-identity coset") {
    // Compose tau with an outer automorphism on elements outside Gamma: breaks the conjugation
    // triangle (and the homomorphism property).
    int outer = -1;
    for (int i = 0; i < int(U.autos.autos.size()); ++i)
      if (std::find(U.autos.conj.begin(), U.autos.conj.end(), i) == U.autos.conj.end()) outer = i;
    REQUIRE(outer >= 0);
    for (int h = 0; h < U.hat.order(); ++h)
      if (U.rho[h] != 0) U.tau[h] = U.autos.index_of(compose_autos(U.autos.autos[outer], U.autos.autos[U.tau[h]]));
    auto v = extension_pair_violation(U);
    REQUIRE(v);
    CHECK_THROWS_AS(validate_extension_pair(U), StructureError);
  }
  SUBCASE("tau on Gamma is not conjugation") {
    for (int k = 0; k < int(U.gamma.size()); ++k) U.tau[U.gamma[k]] = 0;
    auto v = extension_pair_violation(U);
    REQUIRE(v);
  }
  SUBCASE("rho not a homomorphism") {
    U.rho[1] = 1 - U.rho[1];
    CHECK(extension_pair_violation(U));
  }
}

TEST_CASE("trivial extension: Gamma x G acting trivially") {
  const ExtensionPair& A = a4_s4().U;
  ExtensionPair U = trivial_extension(A.L, A.autos, FiniteGroup::cyclic(3));
  CHECK(!extension_pair_violation(U));
  LUCategory LU = build_LU(U);
  CHECK(LU.cat.num_morphisms() == 3 * A.L.cat.num_morphisms());
  CHECK(!LU.cat.check_laws());
  CHECK(!check_mono_epi(LU.cat));

  // G = 1: L_U is L.
  ExtensionPair U1 = trivial_extension(A.L, A.autos, FiniteGroup::trivial());
  LUCategory LU1 = build_LU(U1);
  CHECK(LU1.cat.num_morphisms() == A.L.cat.num_morphisms());
  for (int g = 0; g < A.L.cat.num_morphisms(); ++g)
    for (int f : A.L.cat.into(A.L.cat.src(g)))
      CHECK(LU1.cat.compose(LU1.id_of(g, 0), LU1.id_of(f, 0)) == LU1.id_of(A.L.cat.compose(g, f), 0));
}

TEST_CASE("L_U for A4 in S4") {
  const ExtensionPair& U = a4_s4().U;
  LUCategory LU = build_LU(U);
  CHECK(LU.cat.num_morphisms() == 2 * U.L.cat.num_morphisms());
  CHECK(LU.cat.hom(0, 0).size() == 24);
  CHECK(!LU.cat.check_laws());
  CHECK(!check_mono_epi(LU.cat));
  // Well defined: [[psi mu, eta]] o [[phi lam, gamma]] = [[psi, mu eta]] o [[phi, lam gamma]].
  const FiniteCategory& C = U.L.cat;
  const auto& A = U.autos;
  int checked = 0;
  for (int k_mu = 0; k_mu < int(A.aut_S.size()); k_mu += 3)
    for (int k_lam = 0; k_lam < int(A.aut_S.size()); k_lam += 5)
      for (int eta = 0; eta < U.hat.order(); eta += 5)
        for (int gam = 0; gam < U.hat.order(); gam += 7)
          for (int psi : {C.identity(0), A.aut_S[1]})
            for (int phi : {C.identity(0), A.aut_S[2]}) {
              int mu = A.aut_S[k_mu], lam = A.aut_S[k_lam];
              int l = lu_compose_pairs(U, LU, C.compose(psi, mu), eta, C.compose(phi, lam), gam);
              int r = lu_compose_pairs(U, LU, psi, U.hat.mul(U.gamma[k_mu], eta), phi, U.hat.mul(U.gamma[k_lam], gam));
              CHECK(l == r);
              ++checked;
            }
  CHECK(checked > 100);
}

TEST_CASE("group extension inputs") {
  FiniteGroup G = examples::s4();
  CHECK_THROWS_AS(canonical_pair_from_group_extension(G, examples::d8_in_s4(G), 2), InputError);
  // Ghat = Gbar: trivial G.
  GroupExtensionPair P = canonical_pair_from_group_extension(G, G.all(), 2);
  CHECK(P.U.G.order() == 1);
  ExtensionResult R = build_extension(P.U);
  CHECK(R.ok());
  CHECK(R.T.cat.num_morphisms() == P.U.L.cat.num_morphisms());
}

TEST_CASE("A4 x Z3 in S4 x Z3: E0 cancels") {
  FiniteGroup z3 = FiniteGroup::from_perms({parse_cycles("(1 2 3)", 3)}, 3);
  FiniteGroup G = FiniteGroup::direct_product(examples::s4(), z3);
  std::vector<int> gens;
  for (const char* c : {"(1 2 3)", "(1 2)(3 4)", "(5 6 7)"}) gens.push_back(G.find_perm(parse_cycles(c, 7)));
  GroupExtensionPair P = canonical_pair_from_group_extension(G, G.closure(gens), 2);
  CHECK(P.U.hat.order() == 24);
  CHECK(P.U.G.order() == 2);
  CHECK(P.U.L.cat.num_morphisms() == 12);
  CHECK(!extension_pair_violation(P.U));
}

TEST_CASE("extension pipeline on A4 in S4") {
  const GroupExtensionPair& P = a4_s4();
  const ExtensionResult& R = a4_s4_result();
  for (const auto& c : R.claims) CHECK_MESSAGE(c.ok, c.name << ": " << c.detail);
  CHECK(R.LU.cat.num_morphisms() == 2 * P.U.L.cat.num_morphisms());
  CHECK(R.T.S.order() == 8);
  CHECK(R.T.num_objects() == 2);
  REQUIRE(R.normality.quotient);
  CHECK(R.normality.quotient->order() == 2);

  // Objects {V, S}, morphism counts of T_{V, D8}(S4).
  int s = R.T.sylow_object(), v = R.T.object_of(R.Sbar);
  REQUIRE(s >= 0);
  REQUIRE(v >= 0);
  CHECK(R.T.cat.hom(v, v).size() == 24);
  CHECK(R.T.cat.hom(v, s).size() == 24);
  CHECK(R.T.cat.hom(s, s).size() == 8);
  CHECK(R.T.cat.hom(s, v).empty());

  // F against the ambient oracle F_D8(S4): S -> S4 through hat -> N_S4(V) = S4.
  const FiniteGroup& G = P.ambient;
  std::vector<int> toG;
  for (int h : R.S_in_hat) toG.push_back(P.hat_to_ambient[h]);
  ElemSet SG(toG.begin(), toG.end());
  std::sort(SG.begin(), SG.end());
  CHECK(G.is_subgroup(SG));
  const FusionSystem& F = R.T.fusion();
  const PToralGroup& S = F.group();
  std::vector<int> fromG(G.order(), -1);
  for (int i = 0; i < int(toG.size()); ++i) fromG[toG[i]] = i;
  for (const PSub& A : all_subgroups(S))
    for (const PSub& B : all_subgroups(S)) {
      std::set<std::vector<int>> oracle;
      ElemSet Ag, Bg;
      for (int x : A.H) Ag.push_back(toG[x]);
      for (int x : B.H) Bg.push_back(toG[x]);
      std::sort(Bg.begin(), Bg.end());
      for (int g = 0; g < G.order(); ++g) {
        std::vector<int> m;
        bool in = true;
        for (int x : Ag) {
          int y = G.conj(g, x);
          in = in && std::binary_search(Bg.begin(), Bg.end(), y);
          m.push_back(fromG[y]);
        }
        if (in) oracle.insert(m);
      }
      CHECK(fusion_maps(F, S, A, B) == oracle);
    }
}

TEST_CASE("extension pipeline: step identities") {
  const ExtensionResult& R = a4_s4_result();
  const TransporterSystem& T = R.T;
  // delta(rho(psi)(x)) o psi = psi o delta(x) for psi in T.
  for (int m = 0; m < T.cat.num_morphisms(); ++m) {
    int a = T.cat.src(m), b = T.cat.dst(m);
    for (int x : T.objects[a])
      CHECK(T.cat.compose(T.eps_of(b, b, T.rho[m][x]), m) == T.cat.compose(m, T.eps_of(a, a, x)));
  }
  // Isomorphisms extend uniquely to normalizers inside T.
  for (int m = 0; m < T.cat.num_morphisms(); ++m) {
    if (!T.is_iso(m)) continue;
    int s = T.sylow_object();
    int a = T.cat.src(m);
    if (a == s) continue;
    int n = 0;
    for (int f : T.cat.hom(s, s))
      if (T.cat.compose(f, T.incl(a, s)) == T.cat.compose(T.incl(T.cat.dst(m), s), m)) ++n;
    CHECK(n <= 1);
  }
}

TEST_CASE("extension pipeline on Z3 in S3 at p = 3") {
  FiniteGroup G = groups::symmetric(3);
  ElemSet Z3 = G.closure({G.find_perm(parse_cycles("(1 2 3)", 3))});
  GroupExtensionPair P = canonical_pair_from_group_extension(G, Z3, 3);
  CHECK(P.U.hat.order() == 6);
  CHECK(P.U.G.order() == 2);
  ExtensionResult R = build_extension(P.U);
  for (const auto& c : R.claims) CHECK_MESSAGE(c.ok, c.name << ": " << c.detail);
  CHECK(R.T.S.order() == 3);
  CHECK(R.T.cat.num_morphisms() == 6);
  // F_{Z3}(S3): Aut_F(Z3) has order 2.
  const FusionSystem& F = R.T.fusion();
  CHECK(F.hom(F.whole(), F.whole()).size() == 2);
}

TEST_CASE("extension pipeline refuses an invalid pair") {
  ExtensionPair U = a4_s4().U;
  for (int k = 0; k < int(U.gamma.size()); ++k) U.tau[U.gamma[k]] = 0;
  CHECK_THROWS_AS(build_extension(U), StructureError);
}
