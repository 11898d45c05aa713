#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fk/catsys.hpp"

namespace fk {

CategoryAuto compose_autos(const CategoryAuto& a, const CategoryAuto& b) {
  CategoryAuto c;
  for (int x : b.obj) c.obj.push_back(a.obj[x]);
  for (int m : b.mor) c.mor.push_back(a.mor[m]);
  return c;
}

CategoryAuto inverse_auto(const CategoryAuto& a) {
  CategoryAuto c{std::vector<int>(a.obj.size()), std::vector<int>(a.mor.size())};
  for (int i = 0; i < int(a.obj.size()); ++i) c.obj[a.obj[i]] = i;
  for (int i = 0; i < int(a.mor.size()); ++i) c.mor[a.mor[i]] = i;
  return c;
}

CategoryAuto identity_auto(const FiniteCategory& C) {
  CategoryAuto c;
  for (int a = 0; a < C.num_objects(); ++a) c.obj.push_back(a);
  for (int m = 0; m < C.num_morphisms(); ++m) c.mor.push_back(m);
  return c;
}

bool is_functor(const FiniteCategory& C, const CategoryAuto& a, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  int n = C.num_objects(), M = C.num_morphisms();
  if (int(a.obj.size()) != n || int(a.mor.size()) != M) return fail("wrong sizes");
  if (std::set<int>(a.obj.begin(), a.obj.end()).size() != std::size_t(n)) return fail("not a bijection on objects");
  if (std::set<int>(a.mor.begin(), a.mor.end()).size() != std::size_t(M)) return fail("not a bijection on morphisms");
  for (int m = 0; m < M; ++m) {
    if (a.mor[m] < 0 || a.mor[m] >= M) return fail("morphism out of range");
    if (C.src(a.mor[m]) != a.obj[C.src(m)] || C.dst(a.mor[m]) != a.obj[C.dst(m)]) return fail("endpoints of " + C.label(m));
  }
  for (int x = 0; x < n; ++x)
    if (a.mor[C.identity(x)] != C.identity(a.obj[x])) return fail("identity of " + C.object_name(x));
  for (int g = 0; g < M; ++g)
    for (int f : C.into(C.src(g)))
      if (a.mor[C.compose(g, f)] != C.compose(a.mor[g], a.mor[f]))
        return fail("composition at (" + C.label(g) + ", " + C.label(f) + ")");
  return true;
}

bool is_isotypical(const TransporterSystem& L, const CategoryAuto& a, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  int n = L.num_objects();
  for (int x = 0; x < n; ++x) {
    std::set<int> img, want;
    for (int g : L.objects[x]) img.insert(a.mor[L.eps_of(x, x, g)]);
    int y = a.obj[x];
    for (int g : L.objects[y]) want.insert(L.eps_of(y, y, g));
    if (img != want) return fail("eps(P) not preserved at " + L.object_name(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!L.S.subset(L.objects[x], L.objects[y])) continue;
      int ix = a.obj[x], iy = a.obj[y];
      if (!L.S.subset(L.objects[ix], L.objects[iy]) || a.mor[L.incl(x, y)] != L.incl(ix, iy))
        return fail("inclusion " + L.object_name(x) + " -> " + L.object_name(y) + " not preserved");
    }
  return true;
}

CategoryAuto conjugation_auto(const TransporterSystem& L, int gamma) {
  const FiniteCategory& C = L.cat;
  int top = C.src(gamma);
  if (C.dst(gamma) != top || L.objects[top].size() != std::size_t(L.S.order()))
    throw InputError("conjugation_auto: not an automorphism of S");
  int n = L.num_objects();
  CategoryAuto c;
  std::vector<int> r(n), rinv(n);
  for (int a = 0; a < n; ++a) {
    int b = L.object_of(L.image(gamma, L.objects[a]));
    if (b < 0) throw StructureError("conjugation_auto: image of an object is not an object");
    c.obj.push_back(b);
    r[a] = restrict_morphism(L, gamma, a, b);
    rinv[a] = C.inverse(r[a]);
    if (rinv[a] < 0) throw StructureError("conjugation_auto: restriction is not invertible");
  }
  for (int m = 0; m < C.num_morphisms(); ++m) c.mor.push_back(C.compose(r[C.dst(m)], m, rinv[C.src(m)]));
  return c;
}

int IsotypicalAutos::index_of(const CategoryAuto& a) const {
  auto it = std::lower_bound(autos.begin(), autos.end(), a);
  return it != autos.end() && *it == a ? int(it - autos.begin()) : -1;
}

namespace {

struct AutoSearch {
  const TransporterSystem& L;
  const FiniteCategory& C;
  int n, M, top;
  long nodes = 0;
  std::vector<int> gens;
  std::vector<char> eps_inner;  // m lies in eps_P(P) for its object
  std::vector<int> sigma;
  std::vector<int> img, used_by;
  std::vector<int> trail;
  std::vector<CategoryAuto> found;

  explicit AutoSearch(const TransporterSystem& l) : L(l), C(l.cat), n(l.num_objects()), M(l.cat.num_morphisms()) {
    top = L.sylow_object();
    if (top < 0) throw InputError("isotypical_autos: S is not an object");
    eps_inner.assign(M, 0);
    for (int a = 0; a < n; ++a)
      for (int g : L.objects[a]) eps_inner[L.eps_of(a, a, g)] = 1;
    choose_generators();
  }

  std::vector<int> fixed_morphisms() const {
    std::vector<int> out;
    for (int a = 0; a < n; ++a) out.push_back(C.identity(a));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && L.S.subset(L.objects[a], L.objects[b])) out.push_back(L.incl(a, b));
    return out;
  }

  // Greedy: a morphism joins the generators when it is not yet a composite of earlier ones.
  void choose_generators() {
    std::vector<char> in(M, 0);
    std::vector<int> have;
    auto close = [&](int m) {
      std::vector<int> work{m};
      if (in[m]) return;
      in[m] = 1;
      have.push_back(m);
      while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        std::vector<int> next;
        for (int g : C.out_of(C.dst(x)))
          if (in[g]) next.push_back(C.compose(g, x));
        for (int f : C.into(C.src(x)))
          if (in[f]) next.push_back(C.compose(x, f));
        for (int y : next)
          if (!in[y]) {
            in[y] = 1;
            have.push_back(y);
            work.push_back(y);
          }
      }
    };
    for (int m : fixed_morphisms()) close(m);
    std::vector<int> order;
    for (int m : C.hom(top, top)) order.push_back(m);
    for (int m = 0; m < M; ++m)
      if (C.src(m) != top || C.dst(m) != top) order.push_back(m);
    for (int m : order)
      if (!in[m]) {
        gens.push_back(m);
        close(m);
      }
  }

  bool set(int m, int v) {
    if (img[m] >= 0) return img[m] == v;
    if (used_by[v] >= 0) return false;
    if (eps_inner[m] != eps_inner[v]) return false;
    img[m] = v;
    used_by[v] = m;
    trail.push_back(m);
    return true;
  }

  // Assign m -> v and everything forced by composition with assigned morphisms.
  bool assign(int m, int v) {
    std::vector<std::pair<int, int>> work{{m, v}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      if (img[x] >= 0) {
        if (img[x] != y) return false;
        continue;
      }
      if (!set(x, y)) return false;
      for (int g : C.out_of(C.dst(x)))
        if (img[g] >= 0) work.push_back({C.compose(g, x), C.compose(img[g], y)});
      for (int f : C.into(C.src(x)))
        if (img[f] >= 0) work.push_back({C.compose(x, f), C.compose(y, img[f])});
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      int m = trail.back();
      trail.pop_back();
      used_by[img[m]] = -1;
      img[m] = -1;
    }
  }

  void tick() {
    if (++nodes > bounds().functor_search)
      throw BoundExceeded("isotypical_autos: more than " + std::to_string(bounds().functor_search) + " search nodes");
  }

  void search_morphisms(std::size_t k) {
    tick();
    if (k == gens.size()) {
      CategoryAuto a{sigma, img};
      if (std::find(img.begin(), img.end(), -1) != img.end()) return;
      if (is_functor(C, a) && is_isotypical(L, a)) found.push_back(a);
      return;
    }
    int g = gens[k];
    if (img[g] >= 0) {
      search_morphisms(k + 1);
      return;
    }
    for (int v : C.hom(sigma[C.src(g)], sigma[C.dst(g)])) {
      std::size_t mark = trail.size();
      if (assign(g, v)) search_morphisms(k + 1);
      undo(mark);
    }
  }

  bool object_ok(int a, int b) const {
    const ElemSet &Pa = L.objects[a], &Pb = L.objects[b];
    if (Pa.size() != Pb.size() || C.hom(a, a).size() != C.hom(b, b).size()) return false;
    if ((a == top) != (b == top)) return false;
    for (int x = 0; x < n; ++x) {
      if (sigma[x] < 0) continue;
      int y = sigma[x];
      if (C.hom(a, x).size() != C.hom(b, y).size() || C.hom(x, a).size() != C.hom(y, b).size()) return false;
      if (L.S.subset(Pa, L.objects[x]) != L.S.subset(Pb, L.objects[y])) return false;
      if (L.S.subset(L.objects[x], Pa) != L.S.subset(L.objects[y], Pb)) return false;
    }
    return true;
  }

  void search_objects(int a, std::vector<char>& taken) {
    tick();
    if (a == n) {
      img.assign(M, -1);
      used_by.assign(M, -1);
      trail.clear();
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = assign(C.identity(x), C.identity(sigma[x]));
      for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y)
          if (x != y && L.S.subset(L.objects[x], L.objects[y])) ok = assign(L.incl(x, y), L.incl(sigma[x], sigma[y]));
      if (ok) search_morphisms(0);
      return;
    }
    for (int b = 0; b < n; ++b) {
      if (taken[b] || !object_ok(a, b)) continue;
      taken[b] = 1;
      sigma[a] = b;
      search_objects(a + 1, taken);
      sigma[a] = -1;
      taken[b] = 0;
    }
  }

  void run() {
    sigma.assign(n, -1);
    std::vector<char> taken(n, 0);
    search_objects(0, taken);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
  }
};

}  // namespace

IsotypicalAutos isotypical_autos(const TransporterSystem& L) {
  AutoSearch s(L);
  s.run();
  IsotypicalAutos out;
  out.autos = std::move(s.found);
  out.nodes = s.nodes;
  if (out.autos.empty() || !(out.autos.front() == identity_auto(L.cat)))
    throw StructureError("isotypical_autos: identity functor missing");
  int top = L.sylow_object();
  out.aut_S = L.cat.hom(top, top);
  std::set<int> inner;
  for (int g : out.aut_S) {
    int i = out.index_of(conjugation_auto(L, g));
    if (i < 0) throw StructureError("isotypical_autos: c_gamma is not among the enumerated functors");
    out.conj.push_back(i);
    inner.insert(i);
  }
  out.inner_count = int(inner.size());
  out.out_order = int(out.autos.size()) / out.inner_count;
  return out;
}

std::vector<int> center_of(const TransporterSystem& L) {
  int top = L.sylow_object();
  if (top < 0) throw InputError("center_of: S is not an object");
  CategoryAuto id = identity_auto(L.cat);
  std::vector<int> out;
  for (int g : L.cat.hom(top, top))
    if (conjugation_auto(L, g) == id) out.push_back(g);
  return out;
}

// Normal subsystems ------------------------------------------------------------------------------

SubsystemDatum full_subsystem(const TransporterSystem& T, const ElemSet& Sbar, const std::vector<int>& objects) {
  SubsystemDatum d{Sbar, objects, {}};
  for (int a : objects)
    for (int b : objects)
      for (int m : T.cat.hom(a, b)) d.morphisms.push_back(m);
  std::sort(d.morphisms.begin(), d.morphisms.end());
  return d;
}

NormalityReport is_normal_subsystem(const SubsystemDatum& sub, const TransporterSystem& T) {
  const FiniteCategory& C = T.cat;
  const FiniteGroup& S = T.S;
  NormalityReport r;
  std::set<int> mors(sub.morphisms.begin(), sub.morphisms.end());
  std::set<int> objs(sub.objects.begin(), sub.objects.end());
  auto in_sub = [&](int m) { return mors.count(m) > 0; };

  r.subcategory = S.is_subgroup(sub.Sbar) && S.is_normal(sub.Sbar, S.all());
  for (int a : objs) r.subcategory = r.subcategory && in_sub(C.identity(a)) && S.subset(T.objects[a], sub.Sbar);
  for (int m : mors) r.subcategory = r.subcategory && objs.count(C.src(m)) && objs.count(C.dst(m));
  for (int g : mors)
    for (int f : mors)
      if (C.src(g) == C.dst(f) && !in_sub(C.compose(g, f))) r.subcategory = false;
  if (!r.subcategory) r.witnesses.push_back("not a subcategory over a normal subgroup");
  int sb = T.object_of(sub.Sbar);
  if (sb < 0 || !objs.count(sb)) {
    r.witnesses.push_back("Sbar is not an object of the subsystem");
    return r;
  }

  // (i)
  r.cond_i = true;
  for (int m = 0; m < C.num_morphisms() && r.cond_i; ++m)
    for (int x : T.objects[C.src(m)])
      if (S.contains(sub.Sbar, x) && !S.contains(sub.Sbar, T.rho[m][x])) {
        r.cond_i = false;
        r.witnesses.push_back("(i): Sbar is not strongly closed, moved by " + C.label(m));
        break;
      }
  std::set<ElemSet> want, have;
  for (const auto& P : T.objects) want.insert(S.intersect(P, sub.Sbar));
  for (int a : objs) have.insert(T.objects[a]);
  if (want != have) {
    r.cond_i = false;
    r.witnesses.push_back("(i): objects differ from {P n Sbar}");
  }

  const std::vector<int>& autT = C.hom(sb, sb);
  // gamma restricted to P -> gamma(P), per (gamma, object).
  auto restr = [&](int gamma, int a) {
    int b = T.object_of(T.image(gamma, T.objects[a]));
    if (b < 0) throw StructureError("is_normal_subsystem: image of an object is not an object");
    return restrict_morphism(T, gamma, a, b);
  };

  // (ii)
  r.cond_ii = true;
  for (int a : objs)
    for (int b : objs)
      for (int psi : C.hom(a, b)) {
        bool ok = false;
        for (int gamma : autT) {
          int g = restr(gamma, a);
          for (int s : C.hom(C.dst(g), b))
            if (in_sub(s) && C.compose(s, g) == psi) ok = true;
          if (ok) break;
        }
        if (!ok) {
          r.cond_ii = false;
          r.witnesses.push_back("(ii): " + C.label(psi) + " has no factorization through Aut_T(Sbar)");
          goto done_ii;
        }
      }
done_ii:

  // (iii)
  r.cond_iii = true;
  for (int psi : mors) {
    for (int gamma : autT) {
      int ga = restr(gamma, C.src(psi)), gb = restr(gamma, C.dst(psi));
      int conj = C.compose(gb, psi, C.inverse(ga));
      if (!in_sub(conj)) {
        r.cond_iii = false;
        r.witnesses.push_back("(iii): conjugate of " + C.label(psi) + " by " + C.label(gamma) + " is missing");
        break;
      }
    }
    if (!r.cond_iii) break;
  }

  std::vector<int> ids;
  FiniteGroup A = automorphism_group(C, sb, &ids);
  ElemSet K;
  for (int i = 0; i < int(ids.size()); ++i)
    if (in_sub(ids[i])) K.push_back(i);
  r.aut_T = A.order();
  r.aut_sub = int(K.size());
  r.normal = r.subcategory && r.cond_i && r.cond_ii && r.cond_iii;
  if (r.normal) {
    if (!A.is_subgroup(K) || !A.is_normal(K, A.all())) {
      r.normal = false;
      r.witnesses.push_back("Aut_sub(Sbar) is not normal in Aut_T(Sbar)");
    } else {
      r.quotient = A.quotient(K);
    }
  }
  return r;
}

}  // namespace fk
