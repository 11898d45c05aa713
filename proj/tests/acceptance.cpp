// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fk/bullet.hpp"
#include "fk/cli.hpp"
#include "fk/examples.hpp"
#include "fk/groups.hpp"
#include "fk/normalizer.hpp"
#include "fk/simpl.hpp"

using namespace fk;

namespace {

struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

ElemSet sub_of(const FiniteGroup& G, const std::vector<std::string>& cycles) {
  std::vector<int> gens;
  for (const auto& c : cycles) gens.push_back(G.find_perm(parse_cycles(c, G.degree())));
  return G.closure(gens);
}

std::vector<int> ambient_ids(const FusionSystem& F, const PSub& P) {
  std::vector<int> out;
  for (int x : P.H) out.push_back(F.ambient_embedding()[x]);
  return out;
}

// Every Hom_F(P, Q) as element tables in S numbering, P.H order.
std::set<std::vector<int>> fusion_maps(const FusionSystem& F, const PToralGroup& S, const PSub& P, const PSub& Q) {
  std::set<std::vector<int>> out;
  for (const Morphism& f : F.hom(P, Q)) {
    std::vector<int> m;
    for (int x : P.H) m.push_back(mor::eval(S, f, S.make(torus::zero(0), x)).g);
    out.insert(m);
  }
  return out;
}

// Maps P -> Q induced by conjugation with elements of `by` (ambient ids), in S numbering.
std::set<std::vector<int>> conjugation_maps(const FiniteGroup& G, const std::vector<int>& by, const std::vector<int>& emb,
                                            const PSub& P, const PSub& Q) {
  std::vector<int> fromG(G.order(), -1);
  for (int i = 0; i < int(emb.size()); ++i) fromG[emb[i]] = i;
  std::set<int> Qs;
  for (int x : Q.H) Qs.insert(emb[x]);
  std::set<std::vector<int>> out;
  for (int g : by) {
    std::vector<int> m;
    bool in = true;
    for (int x : P.H) {
      int y = G.conj(g, emb[x]);
      in = in && Qs.count(y);
      m.push_back(fromG[y]);
    }
    if (in) out.insert(m);
  }
  return out;
}

bool brute_centric(const FiniteGroup& G, const ElemSet& S, const ElemSet& P) {
  for (int g = 0; g < G.order(); ++g) {
    ElemSet Q = G.conj_set(g, P);
    if (!G.subset(Q, S)) continue;
    if (!G.subset(G.intersect(G.centralizer(Q), S), Q)) return false;
  }
  return true;
}

// O_p(N_G(P) / P C_G(P)) = 1.
bool brute_radical(const FiniteGroup& G, const ElemSet& P, int p) {
  ElemSet N = G.normalizer(P);
  std::vector<int> gens(P.begin(), P.end());
  for (int c : G.centralizer(P)) gens.push_back(c);
  ElemSet M = G.closure(gens);
  FiniteGroup NG = G.subgroup_group(N);
  ElemSet Mi;
  for (int x : M) Mi.push_back(int(std::lower_bound(N.begin(), N.end(), x) - N.begin()));
  std::sort(Mi.begin(), Mi.end());
  return NG.quotient(Mi).op(p).size() == 1;
}

// ---------------------------------------------------------------------------------------------

void saturation_checker(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  FusionSystem F = examples::d8_in_s4_system();
  const PToralGroup& S = F.group();
  const FiniteGroup& G = F.ambient_group();
  auto subs = all_subgroups(S);
  std::vector<int> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  int pairs = 0;
  for (const PSub& P : subs)
    for (const PSub& Q : subs) {
      ++pairs;
      if (fusion_maps(F, S, P, Q) != conjugation_maps(G, all, F.ambient_embedding(), P, Q))
        c.expect(false, "Hom_F differs from S4 conjugation for " + sub::to_string(S, P) + " -> " + sub::to_string(S, Q));
    }
  SaturationReport r = check_saturated(F, subs);
  c.expect(r.saturated && r.def_axioms && r.cor_criterion, "D8 in S4 not reported saturated by both paths");
  c.expect(r.witnesses.empty(), "D8 in S4 has witnesses");
  double t1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(t1 < 5, "D8 in S4 took over 5 s");

  auto t2 = std::chrono::steady_clock::now();
  FusionSystem Z = examples::z9_system();
  const PToralGroup& ZS = Z.group();
  PSub Z3 = examples::z9_subgroup(Z, 3);
  const FiniteGroup& pi = ZS.pi();
  int gen = pi.generators().at(0);
  // Every automorphism x -> kx of Z/9 restricting to inversion on Z/3 (k = 2 mod 3); none is in F.
  int extensions_in_F = 0;
  auto in_F = fusion_maps(Z, ZS, Z.whole(), Z.whole());
  for (int k : {2, 5, 8}) {
    std::vector<int> m;
    for (int x : Z.whole().H) {
      int e = 0;
      while (pi.pow(gen, e) != x) ++e;
      m.push_back(pi.pow(gen, e * k));
    }
    extensions_in_F += int(in_F.count(m));
  }
  c.expect(extensions_in_F == 0, "an extension of the inversion of Z/3 lies in F");
  c.expect(fusion_maps(Z, ZS, Z3, Z3).size() == 2, "Aut_F(Z/3) is not of order 2");
  SaturationReport zr = check_saturated(Z, all_subgroups(ZS));
  c.expect(!zr.saturated && !zr.def_axioms && !zr.cor_criterion, "Z/9 system reported saturated");
  bool witness = false;
  for (const Witness& w : zr.witnesses)
    if (w.kind.find("receptive") != std::string::npos && w.subgroup == sub::to_string(ZS, Z3)) witness = true;
  c.expect(witness, "no receptivity witness at Z/3");
  double t3 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t2).count();
  c.expect(t3 < 5, "Z/9 took over 5 s");
  std::ostringstream os;
  os << pairs << " hom sets match S4 conjugation; " << r.witnesses.size() << " witnesses; Z/9 witness at Z/3; "
     << std::fixed << std::setprecision(2) << t1 << " s + " << t3 << " s";
  c.note(os.str());
}

void centric_radical(Check& c) {
  FusionSystem F = examples::d8_in_s4_system();
  const FiniteGroup& G = F.ambient_group();
  ElemSet S = examples::d8_in_s4(G);
  std::set<ElemSet> centric, both;
  int checked = 0;
  for (const PSub& P : all_subgroups(F.group())) {
    SubgroupFlags f = classify(F, P);
    ElemSet Pa = F.to_ambient(P);
    bool oc = brute_centric(G, S, Pa);
    c.expect(f.centric == oc, "centric flag differs from the oracle");
    if (oc) {
      bool orad = brute_radical(G, Pa, 2);
      c.expect(f.radical == orad, "radical flag differs from the oracle");
      centric.insert(Pa);
      if (orad) both.insert(Pa);
    }
    ++checked;
  }
  ElemSet V = sub_of(G, {"(1 2)(3 4)", "(1 3)(2 4)"}), Vp = sub_of(G, {"(1 3)", "(2 4)"}), Z4 = sub_of(G, {"(1 2 3 4)"});
  // The Z/4 class has one member inside D8.
  c.expect(centric == std::set<ElemSet>{Z4, V, Vp, S}, "centric set is not {Z4, V, V', D8}");
  c.expect(both == std::set<ElemSet>{V, S}, "centric radical set is not {V, D8}");
  c.note(std::to_string(checked) + " subgroups; centric {Z4, V, V', D8}, centric and radical {V, D8}");
}

void fully_normalized_count(Check& c) {
  int classes = 0;
  auto run = [&](const std::string& name, const FusionSystem& F, const std::vector<PSub>& family) {
    for (const FClass& k : f_classes(F, family)) {
      int n = 0;
      for (const PSub& P : k.s_classes)
        if (classify(F, P).fully_normalized) ++n;
      c.expect(n > 0 && std::gcd(n, F.prime()) == 1,
               name + ": " + std::to_string(n) + " fully normalized S-classes at " + sub::to_string(F.group(), k.rep));
      ++classes;
    }
  };
  FusionSystem d8 = examples::d8_in_s4_system();
  run("D8 in S4", d8, all_subgroups(d8.group()));
  FusionSystem inner = examples::dihedral_inner_system();
  run("inner dihedral", inner, examples::dihedral_family(inner.group(), 6));
  FusionSystem so3 = examples::dihedral_so3_system();
  run("dihedral with SO(3)", so3, examples::dihedral_family(so3.group(), 6));
  c.note(std::to_string(classes) + " F-classes, every count prime to p");
}

std::vector<PSub> sampled_dihedral_subgroups(const PToralGroup& S) {
  std::vector<PSub> out;
  for (int j = 0; j <= 6; ++j) {
    Elt x = examples::dihedral_torus(S, 1, j);
    out.push_back(sub::closure(S, {x}));
    for (int a = 0; a < 128 >> j; ++a) out.push_back(sub::closure(S, {x, examples::dihedral_reflection(S, a, 7)}));
  }
  out.push_back(sub::torus(S));
  out.push_back(sub::whole(S));
  return out;
}

void bullet_suite(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  FusionSystem F = examples::dihedral_so3_system();
  const PToralGroup& S = F.group();
  BulletContext ctx = BulletContext::make(S, F.W());
  c.expect(ctx.W.size() == 2, "W is not {1, -1}");
  auto subs = sampled_dihedral_subgroups(S);
  c.expect(subs.size() >= 200, "fewer than 200 sampled subgroups");
  std::vector<PSub> bul;
  long invariance = 0;
  for (const PSub& P : subs) {
    PSub b = bullet(ctx, P);
    bul.push_back(b);
    c.expect(sub::contains(S, b, P), "P not inside its bullet");
    c.expect(bullet(ctx, b) == b, "bullet not idempotent at " + sub::to_string(S, P));
    c.expect(sub::contains(S, normalizer(S, b), normalizer(S, P)), "N_S(P) not inside N_S(P bullet)");
    for (const Morphism& f : F.rep_hom(b, F.whole())) {
      ++invariance;
      c.expect(mor::image_of(S, f, b) == bullet(ctx, mor::image_of(S, f, P)),
               "bullet does not commute with fusion at " + sub::to_string(S, P));
    }
  }
  long pairs = 0;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j)
      if (sub::contains(S, subs[j], subs[i])) {
        ++pairs;
        c.expect(sub::contains(S, bul[j], bul[i]), "bullet not monotone");
      }
  auto reps = f_bullet(F, ctx, subs);
  c.expect(!reps.empty(), "F-bullet is empty");
  for (const PSub& R : reps) c.expect(bullet(ctx, R) == R, "F-bullet class not fixed by bullet");
  double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(t < 30, "bullet suite took over 30 s");
  std::ostringstream os;
  os << subs.size() << " subgroups, " << pairs << " comparable pairs, " << invariance << " fusion checks, "
     << reps.size() << " F-bullet classes, " << std::fixed << std::setprecision(2) << t << " s";
  c.note(os.str());
}

void normalizer_subsystems(Check& c) {
  FusionSystem F = examples::d8_in_s4_system();
  const PToralGroup& S = F.group();
  int checked = 0;
  for (const PSub& Q : all_subgroups(S))
    for (const AutSubgroupK& K : {AutSubgroupK::trivial(Q), AutSubgroupK::all(Q), AutSubgroupK::inner_S(Q)}) {
      if (!classify_K(F, Q, K).fully_K_normalized) continue;
      NormalizerReport r = check_normalizer_saturated(F, Q, K, true);
      c.expect(r.applicable && r.saturation.saturated,
               "N_F^K(Q) not saturated for " + sub::to_string(S, Q) + ", K = " + K.describe());
      ++checked;
    }
  // C_F(Z(S)) against conjugation by D8 inside S4.
  PSub Z = center(S, F.whole());
  NormalizerSystem cz = normalizer_system(F, Z, AutSubgroupK::trivial(Z));
  c.expect(!cz.renumbered && cz.N == F.whole(), "C_S(Z(S)) is not S");
  const FiniteGroup& G = F.ambient_group();
  std::vector<int> D8 = F.ambient_embedding();
  int sets = 0;
  for (const PSub& P : all_subgroups(S))
    for (const PSub& Q : all_subgroups(S)) {
      ++sets;
      c.expect(fusion_maps(cz.system, S, P, Q) == conjugation_maps(G, D8, F.ambient_embedding(), P, Q),
               "C_F(Z(S)) differs from F_D8(D8) on " + sub::to_string(S, P) + " -> " + sub::to_string(S, Q));
    }
  c.note(std::to_string(checked) + " fully K-normalized pairs saturated; C_F(Z(S)) = F_D8(D8) on " + std::to_string(sets) +
         " hom sets");
}

ElemSet a4_in(const FiniteGroup& G) { return sub_of(G, {"(1 2 3)", "(1 2)(3 4)"}); }

void extension_pipeline(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  FiniteGroup G = examples::s4();
  GroupExtensionPair P = canonical_pair_from_group_extension(G, a4_in(G), 2);
  ExtensionResult R = build_extension(P.U);
  for (const Claim& cl : R.claims) c.expect(cl.ok, "claim " + cl.name + ": " + cl.detail);
  c.expect(R.LU.cat.num_morphisms() == 2 * P.U.L.cat.num_morphisms(), "|Mor(L_U)| is not 2 |Mor(L)|");
  c.expect(R.normality.normal && R.normality.quotient && R.normality.quotient->order() == 2,
           "L is not normal in T with quotient Z/2");
  // F against F_D8(S4), through S -> hat -> S4.
  std::vector<int> toG;
  for (int h : R.S_in_hat) toG.push_back(P.hat_to_ambient[h]);
  ElemSet SG(toG.begin(), toG.end());
  std::sort(SG.begin(), SG.end());
  c.expect(G.is_subgroup(SG) && SG.size() == 8, "S does not land on a Sylow subgroup of S4");
  const FusionSystem& F = R.T.fusion();
  const PToralGroup& S = F.group();
  std::vector<int> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  int sets = 0;
  for (const PSub& A : all_subgroups(S))
    for (const PSub& B : all_subgroups(S)) {
      ++sets;
      c.expect(fusion_maps(F, S, A, B) == conjugation_maps(G, all, toG, A, B),
               "F differs from F_D8(S4) on " + sub::to_string(S, A) + " -> " + sub::to_string(S, B));
    }
  double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(t < 60, "pipeline took over 60 s");
  std::ostringstream os;
  os << R.claims.size() << " claims; " << sets << " hom sets match F_D8(S4); |Mor(L_U)| " << R.LU.cat.num_morphisms()
     << " = 2 x " << P.U.L.cat.num_morphisms() << "; " << std::fixed << std::setprecision(2) << t << " s";
  c.note(os.str());
}

std::vector<std::vector<int>> homomorphisms(const FiniteGroup& G, const FiniteGroup& H) {
  const std::vector<int>& gens = G.generators();
  std::vector<std::vector<int>> out;
  std::vector<int> img(gens.size(), 0);
  while (true) {
    std::vector<int> f(G.order(), -1);
    f[0] = 0;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q)
      for (std::size_t s = 0; s < gens.size() && ok; ++s) {
        int y = G.mul(queue[q], gens[s]), fy = H.mul(f[queue[q]], img[s]);
        if (f[y] < 0) {
          f[y] = fy;
          queue.push_back(y);
        } else if (f[y] != fy) {
          ok = false;
        }
      }
    if (ok) out.push_back(f);
    std::size_t s = 0;
    while (s < img.size() && ++img[s] == H.order()) img[s++] = 0;
    if (s == img.size()) break;
  }
  return out;
}

struct Base {
  ExtensionPair U;
  AutTyp K;
  FiniteGroup autos;
};

Base make_base(const FiniteGroup& G, const ElemSet& N, int p) {
  ExtensionPair U = canonical_pair_from_group_extension(G, N, p).U;
  AutTyp K = aut_typ(U.L, U.autos, 4);
  FiniteGroup A = autos_group(U.autos);
  return {std::move(U), std::move(K), std::move(A)};
}

const Base& a4_base() {
  static const Base b = [] {
    FiniteGroup G = examples::s4();
    return make_base(G, a4_in(G), 2);
  }();
  return b;
}

void roundtrips(Check& c) {
  auto one = [&](const ExtensionPair& U, const AutTyp& K, const std::string& name) {
    c.expect(!check_cocycle(U), name + ": cocycle identity fails");
    TwistingFunction phi = twisting_from_pair(U, K, 4);
    c.expect(check_twisting(phi, K.K).ok(), name + ": phi_U is not a twisting function");
    ExtensionPair back = pair_from_twisting(U.L, U.autos, K, phi);
    auto why = check_pair_iso(back, U, pair_roundtrip_iso(U, back));
    c.expect(!why, name + ": pair -> twisting -> pair is not an isomorphism" + (why ? ": " + *why : ""));
    c.expect(twisting_from_pair(back, K, 4).phi == phi.phi, name + ": twisting -> pair -> twisting differs");
  };
  const Base& a4 = a4_base();
  one(a4.U, a4.K, "A4 in S4");
  FiniteGroup S3 = groups::symmetric(3);
  static const Base z3 = make_base(S3, sub_of(S3, {"(1 2 3)"}), 3);
  FiniteGroup d8 = FiniteGroup::from_perms({parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)}, 4);
  std::vector<FiniteGroup> groups_G{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                    FiniteGroup::cyclic(6),
                                    FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
                                    groups::symmetric(3), d8, groups::alternating(4)};
  std::vector<const Base*> bases{&a4, &z3};
  std::mt19937_64 rng(20261016);
  int nontrivial = 0, triples = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Base& b = *bases[rng() % bases.size()];
    const FiniteGroup& G = groups_G[rng() % groups_G.size()];
    auto homs = homomorphisms(G, b.autos);
    const std::vector<int>& theta = homs[rng() % homs.size()];
    if (std::any_of(theta.begin(), theta.end(), [](int a) { return a != 0; })) ++nontrivial;
    std::vector<int> chi(std::size_t(G.order()) * G.order(), b.K.k_one);
    ExtensionPair U = pair_from_cocycle(b.U.L, b.U.autos, b.K, G, theta, chi);
    triples += G.order() * G.order() * G.order();
    one(U, b.K, "random split pair " + std::to_string(trial));
  }
  c.expect(nontrivial > 0, "every random pair had a trivial action");
  c.note("A4 in S4 and 10 random split pairs (" + std::to_string(nontrivial) + " with nontrivial action); " +
         std::to_string(triples) + " cocycle triples");
}

void nerve_isomorphism(Check& c) {
  const Base& a4 = a4_base();
  NerveIsoReport r = lu_twisted_product_iso(a4.U, a4.K, 4);
  c.expect(r.ok, "N L_U -> E(phi_U) fails: " + r.witness);
  c.expect(r.level_sizes == std::vector<int>{1, 24, 576, 13824, 331776}, "unexpected level sizes");
  long total = std::accumulate(r.level_sizes.begin(), r.level_sizes.end(), 0L);
  c.note(std::to_string(total) + " simplices through level 4, tables equal under the isomorphism");
}

FiniteGroup s4_times_z3() {
  return FiniteGroup::direct_product(examples::s4(), FiniteGroup::from_perms({parse_cycles("(1 2 3)", 3)}, 3));
}

void axiom_checkers(Check& c) {
  FiniteGroup G = examples::s4();
  ElemSet S = examples::d8_in_s4(G);
  TransporterSystem T = transporter_of(G, S, centric_objects(G, S, 2), 2);
  AxiomReport tr = check_transporter_axioms(T);
  for (const AxiomVerdict& v : tr.verdicts) c.expect(v.ok, "T_H(S4) fails " + v.axiom + ": " + v.witness);

  FiniteGroup G3 = s4_times_z3();
  ElemSet S3 = G3.sylow(2);
  TransporterSystem T3 = transporter_of(G3, S3, centric_objects(G3, S3, 2), 2);
  LinkingQuotient LQ = linking_quotient(T3);
  for (int a = 0; a < T3.num_objects(); ++a)
    for (int b = 0; b < T3.num_objects(); ++b)
      c.expect(3 * LQ.L.cat.hom(a, b).size() == T3.cat.hom(a, b).size(), "quotient does not divide a hom set by 3");
  AxiomReport lr = check_linking_axioms(LQ.L);
  for (const AxiomVerdict& v : lr.verdicts) c.expect(v.ok, "quotient fails " + v.axiom + ": " + v.witness);

  // Single-entry faults on T_{V, V', Z4, D8}(S4).
  ElemSet V = sub_of(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  TransporterSystem B = transporter_of(G, S, {V, sub_of(G, {"(1 3)", "(2 4)"}), sub_of(G, {"(1 2 3 4)"}), S}, 2);
  int v = -1;
  for (int a = 0; a < B.num_objects(); ++a) {
    ElemSet Pg;
    for (int x : B.objects[a]) Pg.push_back(B.fusion().ambient_embedding()[x]);
    std::sort(Pg.begin(), Pg.end());
    if (Pg == V) v = a;
  }
  const FiniteCategory& C = B.cat;
  int a3 = -1, inner = -1;
  for (int m : C.hom(v, v)) {
    int g = B.ambient_label[m];
    if (G.element_order(g) == 3 && a3 < 0) a3 = m;
    if (g != 0 && G.contains(V, g) && inner < 0) inner = m;
  }
  std::vector<std::pair<std::string, std::function<AxiomReport()>>> faults{
      {"associativity", [&] { TransporterSystem X = B; X.cat.set_compose(a3, a3, C.identity(v)); return check_transporter_axioms(X); }},
      {"identity", [&] { TransporterSystem X = B; X.cat.set_identity(v, inner); return check_transporter_axioms(X); }},
      {"A1", [&] { TransporterSystem X = B; X.rho[a3][B.objects[v][1]] = B.rho[a3][B.objects[v][2]]; return check_transporter_axioms(X); }},
      {"A2", [&] { TransporterSystem X = B; X.rho[a3] = B.rho[C.identity(v)]; return check_transporter_axioms(X); }},
      {"B", [&] {
         TransporterSystem X = B;
         int x = -1;
         for (int y = 0; y < X.S.order(); ++y)
           if (B.eps_of(v, v, y) == inner) x = y;
         X.eps[std::size_t(v) * X.num_objects() + v][x] = a3;
         return check_transporter_axioms(X);
       }},
      {"I", [&] { TransporterSystem X = B; X.p = 3; return check_transporter_axioms(X); }},
      {"C", [&] {
         TransporterSystem X = T3;
         int top = X.sylow_object();
         auto& e = X.eps[std::size_t(top) * X.num_objects() + top];
         e[1] = X.cat.compose(e[1], LQ.E0[top][1]);
         return check_transporter_axioms(X);
       }},
  };
  int caught = 0;
  for (auto& [axiom, run] : faults) {
    AxiomReport r = run();
    bool ok = r.failed(axiom);
    c.expect(ok, "fault for " + axiom + " not caught by " + axiom);
    caught += ok;
  }
  c.note("T_H(S4) passes " + std::to_string(tr.verdicts.size()) + " axioms; quotient of T_H(S4 x Z3) divides by 3; " +
         std::to_string(caught) + "/7 faults caught by the named axiom");
}

int bump_chi(const AutTyp& K, int n, int x, int slot) {
  std::vector<int> v = K.decode(n, x);
  v[slot] = (v[slot] + 1) % K.num_aut_S;
  return K.encode(v);
}

void simplicial_hygiene(Check& c) {
  const Base& a4 = a4_base();
  int sets = 0;
  auto identities = [&](const std::string& name, const SimplicialSet& X) {
    auto why = X.check_identities();
    c.expect(!why, name + ": " + why.value_or(""));
    ++sets;
  };
  identities("B(Z2)", nerve(group_category(FiniteGroup::cyclic(2)), 4).X);
  identities("B(S3)", nerve(group_category(groups::symmetric(3)), 4).X);
  Nerve NL = nerve(a4.U.L.cat, 4);
  identities("nerve of L", NL.X);
  identities("nerve of L_U", nerve(build_LU(a4.U).cat, 4).X);
  FiniteGroup G = examples::s4();
  ElemSet S = examples::d8_in_s4(G);
  identities("nerve of the S4 linking system",
             nerve(linking_quotient(transporter_of(G, S, centric_objects(G, S, 2), 2)).L.cat, 4).X);
  identities("Aut_typ nerve", a4.K.K.X);
  auto grp = a4.K.K.check_group(1 << 20, 5000, 7);
  c.expect(!grp, "Aut_typ nerve is not a simplicial group: " + grp.value_or(""));
  SimplicialGroup S3 = constant_group(groups::symmetric(3), 4);
  c.expect(!S3.check_group(1 << 20, 0, 1), "constant S3 is not a simplicial group");
  identities("W-bar of constant S3", wbar(S3, 4));
  FiniteGroup Sym3 = groups::symmetric(3);
  ExtensionPair Z3U = canonical_pair_from_group_extension(Sym3, sub_of(Sym3, {"(1 2 3)"}), 3).U;
  AutTyp Z3K = aut_typ(Z3U.L, Z3U.autos, 4);
  identities("W-bar of the Z3 Aut_typ", wbar(Z3K.K, 4));
  TwistingFunction phi = twisting_from_pair(a4.U, a4.K, 4);
  TwistedProduct E = twisted_product(phi, a4.K, a4.U.L, NL);
  identities("E(phi_U)", E.X);
  c.expect(!check_simplicial_map(E.X, E.NB.X, E.pr), "E(phi_U) -> NB(G) is not simplicial");

  // Each of the four relations, broken once.
  const int o = a4.U.G.order();
  c.expect(check_twisting(phi, a4.K.K).ok(), "phi_U fails the relations");
  struct Fault {
    int relation, level, x, slot;
  };
  std::vector<Fault> faults{{2, 2, 1 * o + 1, 1}, {4, 2, 0 * o + 1, 1}, {3, 2, 1 * o + 0, 1}, {1, 3, (1 * o + 1) * o + 1, 2}};
  int caught = 0;
  for (const Fault& f : faults) {
    TwistingFunction bad = phi;
    bad.phi[f.level][f.x] = bump_chi(a4.K, f.level - 1, bad.phi[f.level][f.x], f.slot);
    bool ok = check_twisting(bad, a4.K.K).failed(f.relation);
    c.expect(ok, "broken relation " + std::to_string(f.relation) + " not detected");
    caught += ok;
  }
  c.note(std::to_string(sets) + " simplicial sets pass every identity through level 4; " + std::to_string(caught) +
         "/4 broken relations detected");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Check& c) {
  const std::string dir = std::string(FK_SOURCE_DIR) + "/tests/fixtures/";
  struct Job {
    std::string command, fixture, extra;
  };
  std::vector<Job> jobs{{"saturation", "d8_s4.fk", ""},         {"saturation", "z9.fk", ""},
                        {"saturation", "dihedral.fk", ""},      {"centric-radical", "d8_s4.fk", ""},
                        {"centric-radical", "dihedral.fk", ""}, {"bullet", "dihedral.fk", ""},
                        {"normalizer", "d8_s4.fk", ""},         {"extension", "a4_s4.fk", ""},
                        {"twisting", "a4_s4.fk", "--truncation 3"}, {"transporter-axioms", "d8_s4.fk", ""}};
  int compared = 0;
  // In process, twice.
  for (const Job& j : jobs) {
    std::string text = slurp(dir + j.fixture);
    cli::Options o;
    o.command = j.command;
    o.spec_path = j.fixture;
    if (!j.extra.empty()) o.truncation = 3;
    cli::Report a = cli::run_report(cli::parse_spec(text), text, o);
    cli::Report b = cli::run_report(cli::parse_spec(text), text, o);
    c.expect(a.json.dump() == b.json.dump() && a.table == b.table, j.command + " on " + j.fixture + " differs in process");
    ++compared;
  }
#ifdef FK_CLI_PATH
  // Through the executable, with different thread settings in the environment.
  auto tmp = std::filesystem::temp_directory_path() / "fusionkit_acceptance";
  std::filesystem::remove_all(tmp);
  std::filesystem::create_directories(tmp);
  for (const Job& j : jobs) {
    std::vector<std::string> outs;
    for (const char* threads : {"1", "1", "8"}) {
      auto id = std::to_string(outs.size());
      auto js = tmp / ("r" + id + ".json"), tx = tmp / ("r" + id + ".txt");
      std::string cmd = std::string("OMP_NUM_THREADS=") + threads + " '" + FK_CLI_PATH + "' " + j.command + " --spec '" +
                        dir + j.fixture + "' " + j.extra + " --json '" + js.string() + "' > '" + tx.string() + "' 2>&1";
      int rc = std::system(cmd.c_str());
      c.expect(rc != -1, "could not run the executable");
      outs.push_back(slurp(js) + "\n--\n" + slurp(tx));
    }
    c.expect(!outs[0].empty() && outs[0] == outs[1] && outs[1] == outs[2],
             j.command + " on " + j.fixture + " differs between runs");
    ++compared;
  }
  std::filesystem::remove_all(tmp);
#endif
  c.note(std::to_string(compared) + " report comparisons byte-identical");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Check&);
  };
  const std::vector<Criterion> criteria{
      {1, "saturation checker", saturation_checker},
      {2, "centric and radical classes", centric_radical},
      {3, "fully normalized S-classes prime to p", fully_normalized_count},
      {4, "bullet construction", bullet_suite},
      {5, "normalizer subsystems", normalizer_subsystems},
      {6, "extension pipeline on A4 in S4", extension_pipeline},
      {7, "pair and twisting roundtrips", roundtrips},
      {8, "N L_U and the twisted product", nerve_isomorphism},
      {9, "transporter and linking axiom checkers", axiom_checkers},
      {10, "simplicial identities", simplicial_hygiene},
      {11, "report determinism", determinism},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      k.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = c.failures.empty();
    failed += !ok;
    std::printf("criterion %2d %s  %-40s %7.2f s  %s\n", k.id, ok ? "PASS" : "FAIL", k.title, t,
                ok ? (c.notes.empty() ? "" : c.notes.back().c_str()) : c.failures.front().c_str());
    for (std::size_t i = 1; i < c.failures.size() && i < 5; ++i) std::printf("             %s\n", c.failures[i].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
