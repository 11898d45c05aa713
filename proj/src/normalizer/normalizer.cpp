#include "fk/normalizer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fk {

namespace {

bool is_automorphism_of(const PToralGroup& S, const Morphism& a, const PSub& Q) {
  return a.src == Q && mor::is_homomorphism(S, a) && mor::is_injective(S, a) && mor::image(S, a) == Q;
}

Morphism as_auto(const PToralGroup& S, const Morphism& a, const PSub& Q) { return mor::with_target(S, a, Q); }

// Membership in phi K phi^-1 for automorphisms of phi(Q); phi has target phi(Q).
AutPredicate transported(const PToralGroup& S, const Morphism& phi, const AutSubgroupK& K) {
  Morphism inv = mor::inverse(S, phi);
  return [&S, phi, inv, &K](const Morphism& b) {
    return K.contains(S, mor::compose(S, inv, mor::compose(S, b, phi)));
  };
}

// Same order in S after dividing the component counts.
i64 index_in(const Order& big, const Order& small) {
  if (big.rank != small.rank || small.count == 0 || big.count % small.count != 0)
    throw StructureError("index of subgroups is not finite");
  return big.count / small.count;
}

}  // namespace

AutSubgroupK AutSubgroupK::generated(const PToralGroup& S, const PSub& Q, std::vector<Morphism> gens) {
  if (!Q.is_finite()) throw InputError("generated K needs a finite subgroup");
  for (auto& g : gens) {
    if (!is_automorphism_of(S, g, Q)) throw InputError("K generator is not an automorphism of Q");
    g = as_auto(S, g, Q);
  }
  AutSubgroupK K{Q, Kind::Generated, {}};
  std::vector<Morphism> elems{mor::identity(S, Q)};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Morphism y = mor::compose(S, g, elems[i]);
      bool seen = false;
      for (const auto& e : elems)
        if (e.same_map(y)) {
          seen = true;
          break;
        }
      if (!seen) {
        elems.push_back(y);
        if (int(elems.size()) > bounds().max_group_order) throw BoundExceeded("K is too large");
      }
    }
  K.gens = std::move(elems);
  return K;
}

bool AutSubgroupK::contains(const PToralGroup& S, const Morphism& a) const {
  if (!(a.src == Q)) return false;
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::Trivial:
      return a.same_map(mor::identity(S, Q));
    case Kind::InnerS: {
      PSub N = normalizer(S, Q);
      return mor::conj_equivalent(S, mor::identity(S, Q), a, &N);
    }
    case Kind::Generated:
      for (const auto& g : gens)
        if (g.same_map(a)) return true;
      return false;
  }
  return false;
}

std::string AutSubgroupK::describe() const {
  switch (kind) {
    case Kind::All:
      return "Aut(Q)";
    case Kind::Trivial:
      return "1";
    case Kind::InnerS:
      return "Aut_S(Q)";
    case Kind::Generated:
      return "<" + std::to_string(gens.size()) + " automorphisms>";
  }
  return "?";
}

PSub k_normalizer(const PToralGroup& S, const PSub& Q, const AutPredicate& in_K) {
  PSub N = normalizer(S, Q), C = centralizer(S, Q);
  std::vector<Elt> gens = sub::generators(S, C);
  for (const auto& x : sub::coset_reps(S, N, C))
    if (in_K(mor::conjugation(S, x, Q, Q))) gens.push_back(x);
  return sub::closure(S, gens, C.A.div_basis());
}

PSub k_normalizer(const PToralGroup& S, const PSub& Q, const AutSubgroupK& K) {
  if (K.kind == AutSubgroupK::Kind::Trivial) return centralizer(S, Q);
  if (K.kind == AutSubgroupK::Kind::All || K.kind == AutSubgroupK::Kind::InnerS) return normalizer(S, Q);
  return k_normalizer(S, Q, [&](const Morphism& a) { return K.contains(S, a); });
}

KFlags classify_K(const FusionSystem& F, const PSub& Q, const AutSubgroupK& K) {
  const PToralGroup& S = F.group();
  if (!Q.is_finite()) throw InputError("classify_K needs a finite subgroup");
  KFlags out;
  PSub NK = k_normalizer(S, Q, K);
  out.n_K = NK.order();
  out.fully_K_normalized = true;
  for (const auto& st : F.iso_states(Q)) {
    Morphism phi = mor::with_target(S, st.phi, st.R);
    PSub NR = k_normalizer(S, st.R, transported(S, phi, K));
    if (NR.order() > out.n_K) {
      out.fully_K_normalized = false;
      out.witnesses.push_back({"fully K-normalized", sub::to_string(S, st.R),
                               "N^K has order " + NR.order().to_string() + " > " + out.n_K.to_string()});
      break;
    }
  }
  for (const auto& a : F.hom(Q, Q))
    if (K.contains(S, as_auto(S, a, Q))) ++out.aut_F_K;
  out.aut_S_K = int(index_in(NK.order(), centralizer(S, Q).order()));
  if (out.aut_F_K % out.aut_S_K != 0) throw StructureError("Aut_S^K(Q) is not inside Aut_F^K(Q)");
  out.fully_K_automized = (out.aut_F_K / out.aut_S_K) % F.prime() != 0;
  if (!out.fully_K_automized)
    out.witnesses.push_back({"fully K-automized", sub::to_string(S, Q),
                             "[Aut_F^K : Aut_S^K] = " + std::to_string(out.aut_F_K / out.aut_S_K)});
  return out;
}

PSub NormalizerSystem::to_sub(const PToralGroup& S, const PSub& P) const {
  if (!renumbered) return P;
  const PToralGroup& NS = system.group();
  std::vector<Elt> gens;
  for (const auto& x : sub::elements(S, P)) {
    auto it = std::find(elems.begin(), elems.end(), x);
    if (it == elems.end()) throw InputError("subgroup is not inside the normalizer");
    gens.push_back(NS.make(torus::zero(0), int(it - elems.begin())));
  }
  return sub::closure(NS, gens);
}

PSub NormalizerSystem::from_sub(const PToralGroup& S, const PSub& P) const {
  if (!renumbered) return P;
  std::vector<Elt> gens;
  for (int h : P.H) gens.push_back(elems.at(h));
  return sub::closure(S, gens);
}

Morphism NormalizerSystem::to_sub(const PToralGroup& S, const Morphism& f) const {
  if (!renumbered) return f;
  const PToralGroup& NS = system.group();
  std::vector<Elt> gens, imgs;
  for (const auto& x : sub::generators(S, f.src)) {
    auto at = [&](const Elt& e) {
      auto it = std::find(elems.begin(), elems.end(), e);
      if (it == elems.end()) throw InputError("morphism leaves the normalizer");
      return NS.make(torus::zero(0), int(it - elems.begin()));
    };
    gens.push_back(at(x));
    imgs.push_back(at(mor::eval(S, f, x)));
  }
  return mor::from_generators(NS, to_sub(S, f.src), to_sub(S, f.dst), gens, imgs, IntMatrix());
}

Morphism NormalizerSystem::from_sub(const PToralGroup& S, const Morphism& f) const {
  if (!renumbered) return f;
  const PToralGroup& NS = system.group();
  std::vector<Elt> gens, imgs;
  for (const auto& x : sub::generators(NS, f.src)) {
    gens.push_back(elems.at(x.g));
    imgs.push_back(elems.at(mor::eval(NS, f, x).g));
  }
  return mor::from_generators(S, from_sub(S, f.src), from_sub(S, f.dst), gens, imgs, IntMatrix());
}

NormalizerSystem normalizer_system(const FusionSystem& F, const PSub& Q, const AutSubgroupK& K,
                                   const std::vector<PSub>& family) {
  const PToralGroup& S = F.group();
  NormalizerSystem out;
  out.N = k_normalizer(S, Q, K);
  auto good = [&](const Morphism& f) {
    if (!(mor::image_of(S, f, Q) == Q)) return false;
    return K.contains(S, mor::restrict(S, f, Q, Q));
  };

  if (out.N == sub::whole(S)) {
    std::vector<PSub> domains = S.is_finite() ? all_subgroups(S) : family;
    if (domains.empty()) throw InputError("normalizer system over an infinite group needs a family");
    std::vector<Morphism> gens;
    for (const auto& P : domains) {
      if (!sub::contains(S, P, Q)) continue;
      for (const auto& f : F.rep_hom(P, out.N))
        if (good(f)) gens.push_back(f);
    }
    std::vector<IntMatrix> W = F.W();
    if (S.rank() > 0) {
      // Aut on the torus: rho(S) together with the linear parts of good automorphisms of T Q.
      PSub TQ = sub::closure(S, sub::generators(S, Q), IntMatrix::identity(S.rank()));
      std::vector<IntMatrix> seeds;
      for (int g = 0; g < S.pi().order(); ++g) seeds.push_back(S.rho(g));
      for (const auto& f : F.rep_hom(TQ, out.N))
        if (good(f)) seeds.push_back(f.L * TQ.A.div_coords());
      std::set<IntMatrix> seen{IntMatrix::identity(S.rank())};
      W.assign(seen.begin(), seen.end());
      for (std::size_t i = 0; i < W.size(); ++i)
        for (const auto& s : seeds) {
          IntMatrix y = W[i] * s;
          if (seen.insert(y).second) W.push_back(y);
        }
    }
    out.system = FusionSystem::generated(S, gens, W, true);
    return out;
  }
  if (!out.N.is_finite()) throw InputError("normalizer system: a proper normalizer of positive rank is not supported");

  out.renumbered = true;
  out.elems = sub::elements(S, out.N);
  auto id = std::find(out.elems.begin(), out.elems.end(), S.identity());
  std::iter_swap(out.elems.begin(), id);
  std::map<Elt, int> index;
  for (std::size_t i = 0; i < out.elems.size(); ++i) index[out.elems[i]] = int(i);
  const int n = int(out.elems.size());
  std::vector<int> table(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[std::size_t(a) * n + b] = index.at(S.mul(out.elems[a], out.elems[b]));
  PToralGroup NS = PToralGroup::finite(S.prime(), FiniteGroup::from_table(table, n));
  // Translations need the group; give them a placeholder system first.
  out.system = FusionSystem::generated(NS, {}, {}, true);
  std::vector<Morphism> gens;
  for (const auto& Pn : all_subgroups(NS)) {
    PSub P = out.from_sub(S, Pn);
    if (!sub::contains(S, P, Q)) continue;
    for (const auto& f : F.rep_hom(P, out.N))
      if (good(f)) gens.push_back(out.to_sub(S, f));
  }
  out.system = FusionSystem::generated(NS, gens, {}, true);
  return out;
}

bool same_morphisms(const FusionSystem& A, const FusionSystem& B, std::string* why) {
  const PToralGroup &SA = A.group(), &SB = B.group();
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (!SA.is_finite() || !SB.is_finite()) throw InputError("morphism comparison needs finite groups");
  const int n = SA.pi().order();
  if (n != SB.pi().order()) return fail("groups have different orders");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (SA.pi().mul(a, b) != SB.pi().mul(a, b)) return fail("groups are numbered differently");
  auto subs = all_subgroups(SA);
  for (const auto& P : subs)
    for (const auto& R : subs) {
      auto x = A.hom(P, R), y = B.hom(P, R);
      if (x.size() != y.size())
        return fail("Hom(" + sub::to_string(SA, P) + ", " + sub::to_string(SA, R) + ") has " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()) + " elements");
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].same_map(y[i]))
          return fail("Hom(" + sub::to_string(SA, P) + ", " + sub::to_string(SA, R) + ") differs at " +
                      mor::to_string(SA, x[i]));
    }
  return true;
}

std::optional<KExtension> k_extension(const FusionSystem& F, const Morphism& phi0, const AutSubgroupK& K) {
  const PToralGroup& S = F.group();
  const PSub& Q = K.Q;
  if (!(mor::image(S, phi0) == Q)) throw InputError("k_extension: phi must map onto Q");
  Morphism phi = mor::with_target(S, phi0, Q);
  Morphism inv = mor::inverse(S, phi);
  const PSub& R = phi.src;
  // alpha in K^phi iff phi alpha phi^-1 in K.
  PSub NR = k_normalizer(S, R, [&](const Morphism& a) {
    return K.contains(S, mor::compose(S, phi, mor::compose(S, a, inv)));
  });
  PSub dom = sub::join(S, NR, R);
  for (const auto& c : F.hom(Q, Q)) {
    Morphism chi = as_auto(S, c, Q);
    if (!K.contains(S, chi)) continue;
    if (auto e = find_extension(F, mor::compose(S, chi, phi), dom)) return KExtension{chi, *e};
  }
  return std::nullopt;
}

NormalizerReport check_normalizer_saturated(const FusionSystem& F, const PSub& Q, const AutSubgroupK& K,
                                            std::optional<bool> F_saturated, const std::vector<PSub>& family) {
  const PToralGroup& S = F.group();
  NormalizerReport rep;
  rep.flags = classify_K(F, Q, K);
  bool fsat = F_saturated ? *F_saturated
                          : check_saturated(F, S.is_finite() ? all_subgroups(S) : family).saturated;
  rep.applicable = fsat && rep.flags.fully_K_normalized;
  if (!fsat)
    rep.note = "F is not saturated; subsystem checked without the saturation guarantee";
  else if (!rep.flags.fully_K_normalized)
    rep.note = "Q is not fully K-normalized; subsystem checked without the saturation guarantee";
  else
    rep.note = "hypotheses hold: the subsystem should be saturated";
  NormalizerSystem ns = normalizer_system(F, Q, K, family);
  rep.N = ns.N;
  const PToralGroup& NS = ns.system.group();
  std::vector<PSub> fam;
  if (NS.is_finite()) {
    fam = all_subgroups(NS);
  } else {
    for (const auto& P : family)
      if (sub::contains(S, ns.N, P)) fam.push_back(P);
  }
  rep.saturation = check_saturated(ns.system, fam);
  return rep;
}

}  // namespace fk
