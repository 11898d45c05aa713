#include "fk/extend.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "fk/morphism.hpp"

namespace fk {

namespace {

std::map<int, int> aut_index(const IsotypicalAutos& A) {
  std::map<int, int> k;
  for (int i = 0; i < int(A.aut_S.size()); ++i) k[A.aut_S[i]] = i;
  return k;
}

}  // namespace

std::vector<int> ExtensionPair::gamma_index() const {
  std::vector<int> out(hat.order(), -1);
  for (int k = 0; k < int(gamma.size()); ++k) out[gamma[k]] = k;
  return out;
}

std::vector<int> ExtensionPair::section() const {
  if (!t_U.empty()) return t_U;
  std::vector<int> t(G.order(), -1);
  for (int h = 0; h < hat.order(); ++h)
    if (t[rho[h]] < 0) t[rho[h]] = h;
  return t;
}

std::optional<std::string> extension_pair_violation(const ExtensionPair& U) {
  const FiniteCategory& C = U.L.cat;
  const auto& A = U.autos;
  int n = U.hat.order();
  if (U.gamma.size() != A.aut_S.size()) return "gamma does not cover Aut_L(Sbar)";
  if (int(U.rho.size()) != n || int(U.tau.size()) != n) return "rho or tau has the wrong length";
  auto kOf = aut_index(A);
  for (int k1 = 0; k1 < int(A.aut_S.size()); ++k1)
    for (int k2 = 0; k2 < int(A.aut_S.size()); ++k2) {
      int k = kOf.at(C.compose(A.aut_S[k1], A.aut_S[k2]));
      if (U.gamma[k] != U.hat.mul(U.gamma[k1], U.gamma[k2]))
        return "gamma is not a homomorphism at (" + C.label(A.aut_S[k1]) + ", " + C.label(A.aut_S[k2]) + ")";
    }
  ElemSet Gam(U.gamma.begin(), U.gamma.end());
  std::sort(Gam.begin(), Gam.end());
  if (std::adjacent_find(Gam.begin(), Gam.end()) != Gam.end()) return "gamma is not injective";
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (U.rho[U.hat.mul(x, y)] != U.G.mul(U.rho[x], U.rho[y]))
        return "rho is not a homomorphism at (" + U.hat.label(x) + ", " + U.hat.label(y) + ")";
      if (U.tau[U.hat.mul(x, y)] < 0 || U.tau[x] < 0 || U.tau[y] < 0) return "tau leaves the isotypical automorphisms";
      if (A.autos[U.tau[U.hat.mul(x, y)]] != compose_autos(A.autos[U.tau[x]], A.autos[U.tau[y]]))
        return "tau is not a homomorphism at (" + U.hat.label(x) + ", " + U.hat.label(y) + ")";
    }
  ElemSet ker;
  for (int x = 0; x < n; ++x)
    if (U.rho[x] == 0) ker.push_back(x);
  if (ker != Gam) return "ker(rho) differs from Gamma";
  std::vector<bool> hit(U.G.order(), false);
  for (int x = 0; x < n; ++x) hit[U.rho[x]] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return "rho is not onto G";
  if (!U.t_U.empty()) {
    if (int(U.t_U.size()) != U.G.order() || U.t_U[0] != 0) return "t_U is not a regular section";
    for (int g = 0; g < U.G.order(); ++g)
      if (U.rho[U.t_U[g]] != g) return "t_U is not a section of rho at " + U.G.label(g);
  }
  for (int k = 0; k < int(A.aut_S.size()); ++k)
    if (U.tau[U.gamma[k]] != A.conj[k]) return "tau(gamma) is not c_gamma at " + C.label(A.aut_S[k]);
  for (int h = 0; h < n; ++h) {
    const CategoryAuto& t = A.autos[U.tau[h]];
    for (int k = 0; k < int(A.aut_S.size()); ++k) {
      auto it = kOf.find(t.mor[A.aut_S[k]]);
      if (it == kOf.end() || U.gamma[it->second] != U.hat.conj(h, U.gamma[k]))
        return "conjugation by " + U.hat.label(h) + " disagrees with tau on " + C.label(A.aut_S[k]);
    }
  }
  return std::nullopt;
}

ExtensionPair validate_extension_pair(ExtensionPair U) {
  if (auto v = extension_pair_violation(U)) throw StructureError("extension pair: " + *v);
  return U;
}

std::optional<std::string> check_pair_iso(const ExtensionPair& A, const ExtensionPair& B, const std::vector<int>& theta) {
  int n = A.hat.order();
  if (B.hat.order() != n || int(theta.size()) != n) return "orders differ";
  std::vector<bool> hit(n, false);
  for (int x : theta) {
    if (x < 0 || x >= n || hit[x]) return "theta is not a bijection";
    hit[x] = true;
  }
  for (int x = 0; x < n; ++x) {
    if (B.rho[theta[x]] != A.rho[x]) return "theta does not commute with rho at " + A.hat.label(x);
    if (B.autos.autos[B.tau[theta[x]]] != A.autos.autos[A.tau[x]]) return "theta does not commute with tau at " + A.hat.label(x);
    for (int y = 0; y < n; ++y)
      if (theta[A.hat.mul(x, y)] != B.hat.mul(theta[x], theta[y]))
        return "theta is not a homomorphism at (" + A.hat.label(x) + ", " + A.hat.label(y) + ")";
  }
  for (int k = 0; k < int(A.gamma.size()); ++k)
    if (theta[A.gamma[k]] != B.gamma[k]) return "theta does not commute with gamma";
  return std::nullopt;
}

FiniteGroup autos_group(const IsotypicalAutos& A) {
  int n = int(A.autos.size());
  std::vector<int> table(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = A.index_of(compose_autos(A.autos[i], A.autos[j]));
      if (k < 0) throw StructureError("isotypical automorphisms are not closed under composition");
      table[std::size_t(i) * n + j] = k;
    }
  return FiniteGroup::from_table(std::move(table), n);
}

ExtensionPair trivial_extension(const TransporterSystem& L, const IsotypicalAutos& autos, const FiniteGroup& G) {
  int s = L.sylow_object();
  if (s < 0) throw InputError("trivial_extension: Sbar is not an object");
  std::vector<int> ids;
  FiniteGroup Gam = automorphism_group(L.cat, s, &ids);
  ExtensionPair U;
  U.L = L;
  U.autos = autos;
  U.hat = FiniteGroup::direct_product(Gam, G);
  U.G = G;
  auto kOf = aut_index(autos);
  std::map<int, int> pos;
  for (int i = 0; i < int(ids.size()); ++i) pos[ids[i]] = i;
  int g = G.order();
  for (int m : autos.aut_S) U.gamma.push_back(pos.at(m) * g);
  for (int x = 0; x < U.hat.order(); ++x) {
    U.rho.push_back(x % g);
    U.tau.push_back(autos.conj[kOf.at(ids[x / g])]);
  }
  return U;
}

// L_U ----------------------------------------------------------------------------------------

int lu_class(const ExtensionPair& U, const LUCategory& LU, int phi, int gh) {
  const FiniteCategory& C = U.L.cat;
  int g = U.rho[gh];
  int t = LU.section[g];
  int lam = U.hat.mul(gh, U.hat.inv(t));
  int k = LU.gamma_of_hat[lam];
  if (k < 0) throw StructureError("lu_class: section is not a transversal");
  const CategoryAuto& c = U.autos.autos[U.autos.conj[k]];
  int A = C.src(phi), a = -1;
  for (int x = 0; x < C.num_objects(); ++x)
    if (c.obj[x] == A) a = x;
  int r = LU.restr[k][a];
  return LU.id_of(C.compose(phi, r), g);
}

int lu_compose_pairs(const ExtensionPair& U, const LUCategory& LU, int psi, int eta, int phi, int gamma) {
  const FiniteCategory& C = U.L.cat;
  int tphi = U.autos.autos[U.tau[eta]].mor[phi];
  if (C.dst(tphi) != C.src(psi)) return -1;
  return lu_class(U, LU, C.compose(psi, tphi), U.hat.mul(eta, gamma));
}

LUCategory build_LU(const ExtensionPair& U) {
  const TransporterSystem& L = U.L;
  const FiniteCategory& C = L.cat;
  const auto& A = U.autos;
  LUCategory LU;
  LU.section = U.section();
  if (LU.section[0] != 0) throw StructureError("build_LU: section does not send 1 to 1");
  int M = C.num_morphisms(), nG = U.G.order();
  LU.num_L_morphisms = M;
  LU.restr.assign(A.aut_S.size(), std::vector<int>(L.num_objects(), -1));
  for (int k = 0; k < int(A.aut_S.size()); ++k)
    for (int a = 0; a < L.num_objects(); ++a) {
      int b = L.object_of(L.image(A.aut_S[k], L.objects[a]));
      LU.restr[k][a] = restrict_morphism(L, A.aut_S[k], a, b);
    }
  std::vector<std::vector<int>> inv_obj(nG);
  for (int g = 0; g < nG; ++g) {
    const CategoryAuto& t = A.autos[U.tau[LU.section[g]]];
    inv_obj[g].assign(L.num_objects(), -1);
    for (int a = 0; a < L.num_objects(); ++a) inv_obj[g][t.obj[a]] = a;
  }
  std::vector<int> src, dst, ident;
  std::vector<std::string> labels, names;
  for (int a = 0; a < C.num_objects(); ++a) names.push_back(C.object_name(a));
  LU.lookup.assign(std::size_t(M) * nG, -1);
  for (int phi = 0; phi < M; ++phi)
    for (int g = 0; g < nG; ++g) {
      LU.lookup[std::size_t(phi) * nG + g] = int(src.size());
      LU.phi.push_back(phi);
      LU.g.push_back(g);
      src.push_back(inv_obj[g][C.src(phi)]);
      dst.push_back(C.dst(phi));
      labels.push_back("[[" + C.label(phi) + "," + U.G.label(g) + "]]");
    }
  for (int a = 0; a < C.num_objects(); ++a) ident.push_back(LU.id_of(C.identity(a), 0));
  LU.gamma_of_hat = U.gamma_index();
  LU.cat = FiniteCategory::build(
      names, src, dst, ident,
      [&](int h, int f) {
        return lu_compose_pairs(U, LU, LU.phi[h], LU.section[LU.g[h]], LU.phi[f], LU.section[LU.g[f]]);
      },
      labels);
  return LU;
}

std::optional<std::string> check_mono_epi(const FiniteCategory& C) {
  std::vector<int> seen(C.num_morphisms(), -1);
  for (int g = 0; g < C.num_morphisms(); ++g) {
    for (int f : C.into(C.src(g))) {
      int x = C.compose(g, f);
      if (seen[x] == 2 * g) return "not a monomorphism: " + C.label(g);
      seen[x] = 2 * g;
    }
    for (int h : C.out_of(C.dst(g))) {
      int x = C.compose(h, g);
      if (seen[x] == 2 * g + 1) return "not an epimorphism: " + C.label(g);
      seen[x] = 2 * g + 1;
    }
  }
  return std::nullopt;
}

// Pairs from group extensions ------------------------------------------------------------------

GroupExtensionPair canonical_pair_from_group_extension(const FiniteGroup& Ghat, const ElemSet& Gbar_in, int p) {
  ElemSet Gbar = Gbar_in;
  std::sort(Gbar.begin(), Gbar.end());
  if (!Ghat.is_subgroup(Gbar) || !Ghat.is_normal(Gbar, Ghat.all()))
    throw InputError("canonical_pair_from_group_extension: not a normal subgroup");
  GroupExtensionPair out;
  out.ambient = Ghat;
  out.normal = Gbar;
  ElemSet Sg = Ghat.sylow(p);
  ElemSet Sbar_g = Ghat.intersect(Sg, Gbar);

  FiniteGroup Gb = Ghat.subgroup_group(Gbar);
  std::vector<int> posGbar(Ghat.order(), -1);
  for (int i = 0; i < int(Gbar.size()); ++i) posGbar[Gbar[i]] = i;
  ElemSet SbarGb;
  for (int x : Sbar_g) SbarGb.push_back(posGbar[x]);
  std::sort(SbarGb.begin(), SbarGb.end());
  TransporterSystem Tbar = transporter_of(Gb, SbarGb, centric_objects(Gb, SbarGb, p), p);
  LinkingQuotient LQ = linking_quotient(Tbar);
  ExtensionPair& U = out.U;
  U.L = LQ.L;
  U.autos = isotypical_autos(U.L);
  const TransporterSystem& L = U.L;
  const ElemSet& emb = Tbar.fusion().ambient_embedding();
  for (int s : emb) out.Sbar_to_ambient.push_back(Gbar[s]);

  ElemSet N = Ghat.normalizer(Sbar_g);
  FiniteGroup Ng = Ghat.subgroup_group(N);
  std::vector<int> posN(Ghat.order(), -1);
  for (int i = 0; i < int(N.size()); ++i) posN[N[i]] = i;
  int s0 = Tbar.sylow_object();
  ElemSet E0;
  for (int m : LQ.E0[s0]) E0.push_back(posN[Gbar[Tbar.ambient_label[m]]]);
  std::sort(E0.begin(), E0.end());
  std::vector<int> coset, rep;
  U.hat = Ng.quotient(E0, &coset, &rep);
  for (int r : rep) out.hat_to_ambient.push_back(N[r]);

  // A representative morphism of Tbar for each morphism of L.
  std::vector<int> lrep(L.cat.num_morphisms(), -1);
  for (int m = 0; m < Tbar.cat.num_morphisms(); ++m)
    if (lrep[LQ.proj[m]] < 0) lrep[LQ.proj[m]] = m;
  std::map<std::tuple<int, int, int>, int> by_label;
  for (int m = 0; m < Tbar.cat.num_morphisms(); ++m)
    by_label[{Tbar.cat.src(m), Tbar.cat.dst(m), Tbar.ambient_label[m]}] = m;
  auto amb_of = [&](int m) { return Gbar[Tbar.ambient_label[m]]; };

  for (int k = 0; k < int(U.autos.aut_S.size()); ++k) U.gamma.push_back(coset[posN[amb_of(lrep[U.autos.aut_S[k]])]]);

  for (int h = 0; h < U.hat.order(); ++h) {
    int n = out.hat_to_ambient[h];
    CategoryAuto a;
    for (int o = 0; o < L.num_objects(); ++o) {
      ElemSet P;
      for (int x : L.objects[o]) {
        int y = posGbar[Ghat.conj(n, Gbar[emb[x]])];
        P.push_back(int(std::find(emb.begin(), emb.end(), y) - emb.begin()));
      }
      std::sort(P.begin(), P.end());
      int o2 = L.object_of(P);
      if (o2 < 0) throw StructureError("conjugation does not preserve the objects of L");
      a.obj.push_back(o2);
    }
    for (int l = 0; l < L.cat.num_morphisms(); ++l) {
      int m = lrep[l];
      int lab = posGbar[Ghat.conj(n, amb_of(m))];
      auto it = by_label.find({a.obj[L.cat.src(l)], a.obj[L.cat.dst(l)], lab});
      if (it == by_label.end()) throw StructureError("conjugation does not preserve morphisms of L");
      a.mor.push_back(LQ.proj[it->second]);
    }
    int idx = U.autos.index_of(a);
    if (idx < 0) throw StructureError("conjugation by " + Ghat.label(n) + " is not an isotypical automorphism");
    U.tau.push_back(idx);
  }
  ElemSet Gam(U.gamma.begin(), U.gamma.end());
  std::sort(Gam.begin(), Gam.end());
  std::vector<int> gcos;
  U.G = U.hat.quotient(Gam, &gcos);
  U.rho = gcos;
  U = validate_extension_pair(std::move(U));
  return out;
}

// The extension T ---------------------------------------------------------------------------

bool ExtensionResult::ok() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.ok; });
}

ExtensionResult build_extension(const ExtensionPair& U) {
  if (auto v = extension_pair_violation(U)) throw StructureError("extension pair: " + *v);
  ExtensionResult R;
  R.LU = build_LU(U);
  const LUCategory& LU = R.LU;
  const FiniteCategory& L1 = LU.cat;
  const TransporterSystem& L = U.L;
  const FiniteGroup& hat = U.hat;
  int p = L.p;
  auto kOf = aut_index(U.autos);
  int s0 = L.sylow_object();
  if (s0 < 0) throw InputError("build_extension: Sbar is not an object of L");

  // delta-bar: Sbar -> Gamma <= hat, and a Sylow S of hat containing its image.
  std::vector<int> dbar;
  for (int s = 0; s < L.S.order(); ++s) dbar.push_back(U.gamma[kOf.at(L.eps_of(s0, s0, s))]);
  R.S_in_hat = hat.sylow(p, hat.closure(dbar));
  FiniteGroup S = hat.subgroup_group(R.S_in_hat);
  std::vector<int> posS(hat.order(), -1);
  for (int i = 0; i < int(R.S_in_hat.size()); ++i) posS[R.S_in_hat[i]] = i;
  for (int s : dbar) R.Sbar_to_S.push_back(posS[s]);
  R.Sbar = R.Sbar_to_S;
  std::sort(R.Sbar.begin(), R.Sbar.end());

  std::vector<ElemSet> Lobj;
  for (const auto& P : L.objects) {
    ElemSet Q;
    for (int x : P) Q.push_back(R.Sbar_to_S[x]);
    std::sort(Q.begin(), Q.end());
    Lobj.push_back(Q);
  }
  auto L_object = [&](const ElemSet& Q) {
    auto it = std::find(Lobj.begin(), Lobj.end(), Q);
    return it == Lobj.end() ? -1 : int(it - Lobj.begin());
  };

  // Objects: P <= S with P cap Sbar an object of L.
  TransporterSystem& T = R.T;
  T.p = p;
  T.S = S;
  std::vector<int> bar;
  for (const auto& P : S.all_subgroups()) {
    int a = L_object(S.intersect(P, R.Sbar));
    if (a < 0) continue;
    T.objects.push_back(P);
    bar.push_back(a);
  }
  int n = int(T.objects.size());
  R.L_objects_in_T.assign(L.num_objects(), -1);
  for (int i = 0; i < n; ++i)
    if (T.objects[i] == Lobj[bar[i]]) R.L_objects_in_T[bar[i]] = i;

  // delta1(x) in Aut_L1(P) for x in S normalizing P.
  std::vector<std::vector<int>> d1(L.num_objects(), std::vector<int>(S.order(), -1));
  for (int a = 0; a < L.num_objects(); ++a)
    for (int x = 0; x < S.order(); ++x) {
      int h = R.S_in_hat[x];
      if (U.autos.autos[U.tau[h]].obj[a] == a) d1[a][x] = lu_class(U, LU, L.cat.identity(a), h);
    }

  // Morphisms (P, Q, psi) with psi o delta1(x) = delta1(y) o psi.
  std::vector<int> src, dst, psi_of;
  std::vector<std::vector<int>> rho_rows;
  std::map<std::tuple<int, int, int>, int> lookup;
  for (int P = 0; P < n; ++P)
    for (int Q = 0; Q < n; ++Q) {
      int a = bar[P], b = bar[Q];
      for (int psi : L1.hom(a, b)) {
        std::unordered_map<int, int> y_of;
        for (int y : T.objects[Q]) {
          int key = L1.compose(d1[b][y], psi);
          if (!y_of.emplace(key, y).second) throw StructureError("delta1 is not injective on " + T.S.label(y));
        }
        std::vector<int> row(S.order(), -1);
        bool ok = true;
        for (int x : T.objects[P]) {
          auto it = y_of.find(L1.compose(psi, d1[a][x]));
          if (it == y_of.end()) {
            ok = false;
            break;
          }
          row[x] = it->second;
        }
        if (!ok) continue;
        lookup[{P, Q, psi}] = int(src.size());
        src.push_back(P);
        dst.push_back(Q);
        psi_of.push_back(psi);
        rho_rows.push_back(std::move(row));
      }
    }
  auto find = [&](int P, int Q, int psi) {
    auto it = lookup.find({P, Q, psi});
    return it == lookup.end() ? -1 : it->second;
  };
  std::vector<std::string> names, labels;
  for (int i = 0; i < n; ++i) {
    std::string nm = "<";
    for (int g : S.generators_of(T.objects[i])) nm += (nm.size() > 1 ? "," : "") + hat.label(R.S_in_hat[g]);
    names.push_back(nm + ">");
  }
  for (int m = 0; m < int(src.size()); ++m) labels.push_back(names[src[m]] + "->" + names[dst[m]] + ":" + L1.label(psi_of[m]));
  std::vector<int> ident;
  for (int i = 0; i < n; ++i) ident.push_back(find(i, i, L1.identity(bar[i])));
  T.cat = FiniteCategory::build(
      names, src, dst, ident,
      [&](int h, int f) {
        int m = find(src[f], dst[h], L1.compose(psi_of[h], psi_of[f]));
        if (m < 0) throw StructureError("T is not closed under composition at " + labels[h] + " o " + labels[f]);
        return m;
      },
      labels);
  T.rho = std::move(rho_rows);
  T.eps.assign(std::size_t(n) * n, std::vector<int>(S.order(), -1));
  for (int P = 0; P < n; ++P)
    for (int Q = 0; Q < n; ++Q)
      for (int s = 0; s < S.order(); ++s) {
        if (!S.subset(S.conj_set(s, T.objects[P]), T.objects[Q])) continue;
        int h = R.S_in_hat[s];
        int a = bar[P], b = bar[Q];
        int sa = U.autos.autos[U.tau[h]].obj[a];
        int m = find(P, Q, lu_class(U, LU, L.incl(sa, b), h));
        if (m < 0) throw StructureError("delta1(" + hat.label(h) + ") is not a morphism of T");
        T.eps[std::size_t(P) * n + Q][s] = m;
      }

  for (int l = 0; l < L.cat.num_morphisms(); ++l)
    R.L_morphisms_in_T.push_back(
        find(R.L_objects_in_T[L.cat.src(l)], R.L_objects_in_T[L.cat.dst(l)], LU.id_of(l, 0)));
  int sb = R.L_objects_in_T[s0];
  for (int h = 0; h < hat.order(); ++h) R.hat_in_T.push_back(find(sb, sb, lu_class(U, LU, L.cat.identity(s0), h)));

  // Claims.
  AxiomReport ax = check_transporter_axioms(T);
  {
    Claim c{"transporter axioms", ax.ok(), ""};
    for (const auto& v : ax.verdicts)
      if (!v.ok) c.detail += v.axiom + ": " + v.witness + "; ";
    R.claims.push_back(c);
  }
  const FusionSystem& F = T.fusion();
  {
    Claim c{"objects", true, std::to_string(n) + " objects"};
    for (const auto& P : S.all_subgroups()) {
      SubgroupFlags fl = classify(F, T.psub(P));
      if (fl.centric && fl.radical && T.object_of(P) < 0) {
        c.ok = false;
        c.detail = "centric radical subgroup of order " + std::to_string(P.size()) + " is not an object";
      }
    }
    R.claims.push_back(c);
  }
  {
    Claim c{"aut", true, ""};
    std::vector<int> sorted = R.hat_in_T;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> aut = T.cat.hom(sb, sb);
    std::sort(aut.begin(), aut.end());
    if (std::find(sorted.begin(), sorted.end(), -1) != sorted.end() || sorted != aut) {
      c.ok = false;
      c.detail = "hat -> Aut_T(Sbar) is not a bijection";
    }
    for (int x = 0; x < hat.order() && c.ok; ++x)
      for (int y = 0; y < hat.order() && c.ok; ++y)
        if (R.hat_in_T[hat.mul(x, y)] != T.cat.compose(R.hat_in_T[x], R.hat_in_T[y])) {
          c.ok = false;
          c.detail = "not a homomorphism at (" + hat.label(x) + ", " + hat.label(y) + ")";
        }
    if (c.ok) c.detail = "|Aut_T(Sbar)| = " + std::to_string(aut.size());
    R.claims.push_back(c);
  }
  {
    Claim c{"conjugation", true, ""};
    for (int h = 0; h < hat.order() && c.ok; ++h) {
      const CategoryAuto& t = U.autos.autos[U.tau[h]];
      int gam = R.hat_in_T[h];
      if (gam < 0) {
        c.ok = false;
        break;
      }
      std::vector<int> res(L.num_objects());
      for (int a = 0; a < L.num_objects(); ++a)
        res[a] = restrict_morphism(T, gam, R.L_objects_in_T[a], R.L_objects_in_T[t.obj[a]]);
      for (int l = 0; l < L.cat.num_morphisms(); ++l) {
        int inv = T.cat.inverse(res[L.cat.src(l)]);
        int lhs = T.cat.compose(res[L.cat.dst(l)], R.L_morphisms_in_T[l], inv);
        if (lhs != R.L_morphisms_in_T[t.mor[l]]) {
          c.ok = false;
          c.detail = "c_gamma differs from tau(gamma) for " + hat.label(h) + " at " + L.cat.label(l);
          break;
        }
      }
    }
    R.claims.push_back(c);
  }
  {
    SubsystemDatum sub{R.Sbar, {}, R.L_morphisms_in_T};
    for (int o : R.L_objects_in_T) sub.objects.push_back(o);
    R.normality = is_normal_subsystem(sub, T);
    bool q = R.normality.quotient && R.normality.quotient->order() == U.G.order();
    Claim c{"normal", R.normality.normal && q, ""};
    for (const auto& w : R.normality.witnesses) c.detail += w + "; ";
    if (c.ok) c.detail = "quotient of order " + std::to_string(U.G.order());
    R.claims.push_back(c);
  }
  {
    SaturationReport sr = check_saturated(F, all_subgroups(F.group()));
    Claim c{"saturated", sr.saturated, ""};
    for (const auto& w : sr.witnesses) c.detail += w.kind + " at " + w.subgroup + "; ";
    R.claims.push_back(c);
  }
  return R;
}

}  // namespace fk
