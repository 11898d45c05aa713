#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fk/bullet.hpp"
#include "fk/cli.hpp"
#include "fk/normalizer.hpp"
#include "fk/simpl.hpp"

namespace fk::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail_at(const Value& v, const std::string& msg) {
  throw InputError("line " + std::to_string(v.line) + ", column " + std::to_string(v.col) + ": " + msg);
}

std::string fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

i64 as_int(const Value& v) {
  if (v.kind != Value::Kind::Int) fail_at(v, "expected an integer");
  try {
    return std::stoll(v.text);
  } catch (const std::exception&) {
    fail_at(v, "integer out of range");
  }
}

// [[a, b], [c, d]] row by row, or a flat row-major list of rows*cols entries.
IntMatrix as_matrix(const Value& v, int rows, int cols) {
  if (v.kind != Value::Kind::List) fail_at(v, "expected a matrix");
  IntMatrix M(rows, cols);
  bool nested = !v.items.empty() && v.items[0].kind == Value::Kind::List;
  if (nested) {
    if (int(v.items.size()) != rows) fail_at(v, "expected " + std::to_string(rows) + " rows");
    for (int i = 0; i < rows; ++i) {
      const Value& row = v.items[i];
      if (row.kind != Value::Kind::List || int(row.items.size()) != cols)
        fail_at(row, "expected a row of " + std::to_string(cols) + " entries");
      for (int j = 0; j < cols; ++j) M(i, j) = as_int(row.items[j]);
    }
  } else {
    if (int(v.items.size()) != rows * cols)
      fail_at(v, "expected " + std::to_string(rows * cols) + " matrix entries");
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) M(i, j) = as_int(v.items[std::size_t(i) * cols + j]);
  }
  return M;
}

// List of columns, each of length r.
IntMatrix as_columns(const Value& v, int r) {
  if (v.kind != Value::Kind::List) fail_at(v, "expected a list of columns");
  IntMatrix M(r, int(v.items.size()));
  for (std::size_t j = 0; j < v.items.size(); ++j) {
    const Value& c = v.items[j];
    if (c.kind != Value::Kind::List || int(c.items.size()) != r)
      fail_at(c, "expected a column of " + std::to_string(r) + " entries");
    for (int i = 0; i < r; ++i) M(i, int(j)) = as_int(c.items[i]);
  }
  return M;
}

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int max_point(const std::string& cycles) { return int(parse_cycles(cycles).size()); }

// Closure of the generators and the identity under products.
std::vector<IntMatrix> matrix_closure(int r, const std::vector<IntMatrix>& gens) {
  std::set<IntMatrix> seen{IntMatrix::identity(r)};
  std::vector<IntMatrix> order{IntMatrix::identity(r)};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const IntMatrix& g : gens) {
      IntMatrix m = g * order[i];
      if (seen.insert(m).second) {
        order.push_back(m);
        if (int(order.size()) > bounds().max_group_order) throw BoundExceeded("action matrices generate a large group");
      }
    }
  return order;
}

// Objects named in the document, built on demand.
class Builder {
 public:
  explicit Builder(const SpecDocument& d) : d_(d) {}

  const FiniteGroup& group(const std::string& name) {
    if (auto it = groups_.find(name); it != groups_.end()) return it->second;
    const Block& b = *d_.find(name);
    std::vector<const Value*> perms;
    int degree = 0;
    for (const Stmt& s : b.stmts)
      if (s.key == "perm") {
        perms.push_back(&s.value);
        degree = std::max(degree, max_point(s.value.text));
      }
    if (const Stmt* s = b.find("degree")) {
      i64 d = as_int(s->value);
      if (d < degree || d < 1) fail_at(s->value, "degree smaller than a point in use");
      degree = int(d);
    }
    degree = std::max(degree, 1);
    std::vector<Perm> gens;
    for (const Value* v : perms) gens.push_back(parse_cycles(v->text, degree));
    FiniteGroup G = FiniteGroup::from_perms(gens, degree);
    return groups_.emplace(name, std::move(G)).first->second;
  }

  ElemSet subgroup_in(const FiniteGroup& G, const std::string& name) {
    const Block& b = *d_.find(name);
    std::vector<int> ids;
    for (const Stmt& s : b.stmts)
      if (s.key == "perm") {
        if (max_point(s.value.text) > G.degree()) fail_at(s.value, "permutation moves points outside the ambient group");
        int id = G.find_perm(parse_cycles(s.value.text, G.degree()));
        if (id < 0) fail_at(s.value, "permutation not in the ambient group");
        ids.push_back(id);
      }
    return G.closure(ids);
  }

  const PToralGroup& ptoral(const std::string& name) {
    if (auto it = ptorals_.find(name); it != ptorals_.end()) return it->second;
    const Block& b = *d_.find(name);
    const Value& pv = b.find("p")->value;
    int p = int(as_int(pv));
    if (p < 2 || !is_prime(p)) fail_at(pv, "p must be a prime");
    const Value& rv = b.find("rank")->value;
    i64 r = as_int(rv);
    if (r < 0 || r > 8) fail_at(rv, "rank must lie in 0..8");
    const Value& piv = b.find("pi")->value;
    int degree = 1;
    for (const Value& g : piv.items) {
      if (g.kind != Value::Kind::Perm) fail_at(g, "expected a permutation");
      degree = std::max(degree, max_point(g.text));
    }
    if (const Stmt* s = b.find("degree")) degree = std::max(degree, int(as_int(s->value)));
    std::vector<Perm> gens;
    for (const Value& g : piv.items) gens.push_back(parse_cycles(g.text, degree));
    FiniteGroup pi = FiniteGroup::from_perms(gens, degree);
    std::vector<int> ids;
    for (const Perm& g : gens) ids.push_back(pi.find_perm(g));
    std::vector<IntMatrix> action;
    if (const Stmt* s = b.find("act")) {
      if (s->value.items.size() != gens.size()) fail_at(s->value, "one action matrix per generator of pi");
      for (const Value& m : s->value.items) action.push_back(as_matrix(m, int(r), int(r)));
    } else {
      action.assign(gens.size(), IntMatrix::identity(int(r)));
    }
    try {
      PToralGroup S(p, int(r), pi, ids, action);
      return ptorals_.emplace(name, std::move(S)).first->second;
    } catch (const StructureError& e) {
      fail_at(piv, std::string("not a split p-toral group: ") + e.what());
    }
  }

  const FusionSystem& fusion(const std::string& name) {
    if (auto it = fusions_.find(name); it != fusions_.end()) return it->second;
    const Block& b = *d_.find(name);
    FusionSystem F = b.find("ambient") ? ambient_fusion(b) : generated_fusion(b);
    return fusions_.emplace(name, std::move(F)).first->second;
  }

  // Element of the p-toral group under F; for ambient systems, a permutation of the ambient group.
  Elt element(const FusionSystem& F, const Value& v) {
    const PToralGroup& S = F.group();
    if (F.is_ambient()) {
      if (v.kind != Value::Kind::Perm) fail_at(v, "expected a permutation of the ambient group");
      const FiniteGroup& G = F.ambient_group();
      if (max_point(v.text) > G.degree()) fail_at(v, "permutation moves points outside the ambient group");
      int id = G.find_perm(parse_cycles(v.text, G.degree()));
      const ElemSet& emb = F.ambient_embedding();
      auto it = std::find(emb.begin(), emb.end(), id);
      if (id < 0 || it == emb.end()) fail_at(v, "permutation not in the Sylow subgroup");
      return S.make(torus::zero(0), int(it - emb.begin()));
    }
    return element(S, v);
  }

  Elt element(const PToralGroup& S, const Value& v) {
    std::string perm;
    TorusElt t = torus::zero(S.rank());
    if (v.kind == Value::Kind::Perm) {
      perm = v.text;
    } else if (v.kind == Value::Kind::Elt) {
      std::size_t close = v.text.find(')');
      t = torus_part(S, v, v.text.substr(2, close - 2));
      perm = v.text.substr(close + 1);
    } else {
      fail_at(v, "expected a group element");
    }
    int g = 0;
    if (!perm.empty()) {
      const FiniteGroup& pi = S.pi();
      if (!pi.has_perms() || max_point(perm) > pi.degree()) fail_at(v, "permutation not in the group");
      g = pi.find_perm(parse_cycles(perm, pi.degree()));
      if (g < 0) fail_at(v, "permutation not in the group");
    }
    return S.make(std::move(t), g);
  }

  std::vector<Elt> elements(const FusionSystem& F, const Value& list) {
    std::vector<Elt> out;
    for (const Value& v : list.items) out.push_back(element(F, v));
    return out;
  }

  // The family block, or the default family of F.
  std::vector<PSub> family(const FusionSystem& F, const Block* fam) {
    const PToralGroup& S = F.group();
    if (!fam) {
      if (!S.is_finite()) throw InputError("infinite Sylow subgroup needs a family block");
      return all_subgroups(S);
    }
    std::vector<PSub> out;
    auto add = [&](PSub P) {
      if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(std::move(P));
    };
    for (const Stmt& st : fam->stmts) {
      if (st.key == "all") {
        if (!S.is_finite()) throw InputError("line " + std::to_string(st.line) + ", column " + std::to_string(st.col) +
                                             ": 'all' needs a finite Sylow subgroup");
        for (PSub& P : all_subgroups(S)) add(std::move(P));
      } else if (st.key == "sub") {
        add(subgroup(F, st));
      }
    }
    return out;
  }

  PSub subgroup(const FusionSystem& F, const Stmt& st) {
    const PToralGroup& S = F.group();
    if (st.has_block) {
      std::vector<Elt> gens;
      IntMatrix div(S.rank(), 0);
      for (const Stmt& c : st.children) {
        if (c.key == "gens") gens = elements(F, c.value);
        if (c.key == "div") div = as_columns(c.value, S.rank());
      }
      return sub::closure(S, gens, div);
    }
    if (st.value.kind == Value::Kind::Name) {
      if (st.value.text == "whole") return sub::whole(S);
      if (st.value.text == "trivial") return sub::trivial(S);
      if (st.value.text == "torus") return sub::torus(S);
      fail_at(st.value, "expected whole, trivial, torus or a list of generators");
    }
    return sub::closure(S, elements(F, st.value));
  }

  GroupExtensionPair pair(const Block& b) {
    const FiniteGroup& G = group(b.find("ambient")->value.text);
    ElemSet N = subgroup_in(G, b.find("normal")->value.text);
    const Value& pv = b.find("p")->value;
    int p = int(as_int(pv));
    if (p < 2 || !is_prime(p)) fail_at(pv, "p must be a prime");
    return canonical_pair_from_group_extension(G, N, p);
  }

 private:
  const SpecDocument& d_;
  std::map<std::string, FiniteGroup> groups_;
  std::map<std::string, PToralGroup> ptorals_;
  std::map<std::string, FusionSystem> fusions_;

  FusionSystem ambient_fusion(const Block& b) {
    const FiniteGroup& G = group(b.find("ambient")->value.text);
    const Value& pv = b.find("p")->value;
    int p = int(as_int(pv));
    if (p < 2 || !is_prime(p)) fail_at(pv, "p must be a prime");
    if (const Stmt* s = b.find("sylow")) {
      ElemSet S = subgroup_in(G, s->value.text);
      if (p_part(G.order(), p) != i64(S.size())) fail_at(s->value, "not a Sylow " + std::to_string(p) + "-subgroup");
      return FusionSystem::ambient(G, S, p);
    }
    return FusionSystem::ambient(G, p);
  }

  FusionSystem generated_fusion(const Block& b) {
    const Value& over = b.find("over")->value;
    const Block& ob = *d_.find(over.text);
    PToralGroup S;
    const Stmt* ps = b.find("p");
    if (ob.kind == "group") {
      if (!ps) throw InputError("line " + std::to_string(b.line) + ", column " + std::to_string(b.col) +
                                ": fusion over a finite group needs 'p'");
      int p = int(as_int(ps->value));
      const FiniteGroup& G = group(ob.name);
      if (p < 2 || !is_prime(p) || !G.is_p_group(p)) fail_at(ps->value, ob.name + " is not a " + std::to_string(p) + "-group");
      S = PToralGroup::finite(p, G);
    } else {
      S = ptoral(ob.name);
      if (ps && as_int(ps->value) != S.prime()) fail_at(ps->value, "p differs from the p-toral group");
    }
    std::vector<IntMatrix> W;
    if (const Stmt* ws = b.find("W")) {
      for (const Value& m : ws->value.items) W.push_back(as_matrix(m, S.rank(), S.rank()));
    } else if (S.rank() > 0) {
      std::vector<IntMatrix> acts;
      for (int g : S.pi().generators()) acts.push_back(S.rho(g));
      W = matrix_closure(S.rank(), acts);
    }
    bool conjugation = true;
    if (const Stmt* cs = b.find("conjugation")) {
      if (cs->value.text != "yes" && cs->value.text != "no") fail_at(cs->value, "expected yes or no");
      conjugation = cs->value.text == "yes";
    }
    std::vector<Morphism> gens;
    for (const Stmt& st : b.stmts)
      if (st.key == "morphism") gens.push_back(morphism(S, st));
    return FusionSystem::generated(S, std::move(gens), std::move(W), conjugation);
  }

  Morphism morphism(const PToralGroup& S, const Stmt& st) {
    const Value *src = nullptr, *img = nullptr, *dst = nullptr, *div = nullptr, *L = nullptr;
    for (const Stmt& c : st.children) {
      if (c.key == "src") src = &c.value;
      if (c.key == "img") img = &c.value;
      if (c.key == "dst") dst = &c.value;
      if (c.key == "src_div") div = &c.value;
      if (c.key == "L") L = &c.value;
    }
    auto at = [&](const std::string& msg) {
      return InputError("line " + std::to_string(st.line) + ", column " + std::to_string(st.col) + ": " + msg);
    };
    if (!src || !img) throw at("morphism needs src and img");
    if (src->items.size() != img->items.size()) fail_at(*img, "src and img differ in length");
    std::vector<Elt> gs, is;
    for (const Value& v : src->items) gs.push_back(element(S, v));
    for (const Value& v : img->items) is.push_back(element(S, v));
    IntMatrix D = div ? as_columns(*div, S.rank()) : IntMatrix(S.rank(), 0);
    PSub P = sub::closure(S, gs, D);
    PSub Q;
    if (dst) {
      std::vector<Elt> ds;
      for (const Value& v : dst->items) ds.push_back(element(S, v));
      Q = sub::closure(S, ds);
    } else if (P.A.rank() == 0) {
      Q = sub::closure(S, is);
    } else {
      Q = sub::whole(S);
    }
    IntMatrix Lm;
    if (P.A.rank() > 0) {
      if (!L) throw at("morphism on a subgroup with a torus part needs L");
      Lm = as_matrix(*L, S.rank(), P.A.rank());
    }
    try {
      return mor::from_generators(S, P, Q, gs, is, Lm);
    } catch (const InputError& e) {
      throw at(std::string("morphism: ") + e.what());
    } catch (const StructureError& e) {
      throw at(std::string("morphism: ") + e.what());
    }
  }

  TorusElt torus_part(const PToralGroup& S, const Value& v, const std::string& text) {
    const int p = S.prime();
    std::vector<std::pair<i64, i64>> q;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t slash = item.find('/');
      i64 a = std::stoll(item.substr(0, slash));
      i64 d = slash == std::string::npos ? 1 : std::stoll(item.substr(slash + 1));
      q.emplace_back(a, d);
    }
    if (int(q.size()) != S.rank()) fail_at(v, "torus part needs " + std::to_string(S.rank()) + " coordinates");
    int k = 0;
    std::vector<int> ks;
    for (auto [a, d] : q) {
      int e = 0;
      i64 x = d;
      while (x % p == 0) {
        x /= p;
        ++e;
      }
      if (x != 1 || d == 0) fail_at(v, "denominators must be powers of " + std::to_string(p));
      if (e > bounds().max_denominator_exp / 2) fail_at(v, "denominator too large");
      ks.push_back(e);
      k = std::max(k, e);
    }
    std::vector<i64> num;
    for (std::size_t i = 0; i < q.size(); ++i) {
      i64 scale = 1;
      for (int j = ks[i]; j < k; ++j) scale *= p;
      num.push_back(q[i].first * scale);
    }
    return torus::make(p, k, num);
  }
};

std::string render_sub(const FusionSystem& F, const PSub& P) {
  if (!F.is_ambient()) return sub::to_string(F.group(), P);
  const FiniteGroup& G = F.ambient_group();
  ElemSet H = F.to_ambient(P);
  std::string out = "<";
  std::vector<int> gens = G.generators_of(H);
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + perm_to_cycles(G.perm(gens[i]));
  return out + "> order " + std::to_string(H.size());
}

json witness_json(const Witness& w) { return json{{"kind", w.kind}, {"subgroup", w.subgroup}, {"detail", w.detail}}; }

json flags_json(const SubgroupFlags& f) {
  return json{{"fully_normalized", f.fully_normalized}, {"fully_centralized", f.fully_centralized},
              {"fully_automized", f.fully_automized},   {"receptive", f.receptive},
              {"centric", f.centric},                   {"radical", f.radical},
              {"out_F", f.out_F},                       {"out_S", f.out_S}};
}

// Plain text table: a title and aligned key/value rows.
class Table {
 public:
  void title(const std::string& t) {
    if (!os_.str().empty()) os_ << "\n";
    os_ << t << "\n" << std::string(t.size(), '-') << "\n";
  }
  void row(const std::string& k, const std::string& v) { os_ << "  " << std::left << std::setw(28) << k << v << "\n"; }
  void row(const std::string& k, bool v) { row(k, std::string(v ? "yes" : "no")); }
  void row(const std::string& k, long long v) { row(k, std::to_string(v)); }
  void line(const std::string& s) { os_ << "  " << s << "\n"; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

struct Ctx {
  const SpecDocument& doc;
  const Options& opt;
  Builder& build;
  Table& table;
  json& results;
  std::vector<std::string>& violations;

  void violation(const std::string& v) {
    violations.push_back(v);
    table.line("VIOLATION: " + v);
  }
};

// Fusion blocks to run over, each with its family block (or none for the default family).
std::vector<std::pair<const Block*, const Block*>> fusion_targets(const Ctx& c) {
  std::vector<std::pair<const Block*, const Block*>> out;
  if (!c.opt.family.empty()) {
    const Block* fam = c.doc.find(c.opt.family);
    if (!fam || fam->kind != "family") throw InputError("no family block named '" + c.opt.family + "'");
    out.emplace_back(c.doc.find(fam->find("over")->value.text), fam);
    return out;
  }
  for (const Block* f : c.doc.of_kind("fusion")) {
    const Block* fam = nullptr;
    for (const Block* b : c.doc.of_kind("family"))
      if (b->find("over")->value.text == f->name) {
        fam = b;
        break;
      }
    out.emplace_back(f, fam);
  }
  if (out.empty()) throw InputError("the spec has no fusion block");
  return out;
}

std::string family_name(const Block* fam) { return fam ? fam->name : "all subgroups"; }

void run_saturation(Ctx& c) {
  for (auto [fb, fam] : fusion_targets(c)) {
    const FusionSystem& F = c.build.fusion(fb->name);
    auto family = c.build.family(F, fam);
    SaturationReport r = check_saturated(F, family);
    json j{{"fusion", fb->name}, {"family", family_name(fam)}, {"family_size", family.size()},
           {"saturated", r.saturated}, {"definition_axioms", r.def_axioms}, {"representative_criterion", r.cor_criterion},
           {"axiom_I", r.axiom_I}, {"axiom_II", r.axiom_II}, {"axiom_III", r.axiom_III}, {"truncated", r.truncated},
           {"scope", r.scope}, {"classes", r.classes.size()}};
    json ws = json::array();
    for (const Witness& w : r.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
    c.table.title("saturation: " + fb->name + " over " + family_name(fam));
    c.table.row("subgroups checked", (long long)family.size());
    c.table.row("F-classes", (long long)r.classes.size());
    c.table.row("saturated", r.saturated);
    c.table.row("axioms I, II, III", r.def_axioms);
    c.table.row("representative criterion", r.cor_criterion);
    c.table.row("truncated", r.truncated);
    c.table.row("scope", r.scope);
    for (const Witness& w : r.witnesses) c.table.line("witness " + w.kind + " at " + w.subgroup + (w.detail.empty() ? "" : ": " + w.detail));
    if (!r.saturated) {
      std::string first = r.witnesses.empty() ? "" : ": " + r.witnesses[0].kind + " at " + r.witnesses[0].subgroup;
      c.violation(fb->name + " is not saturated" + first);
    }
    if (r.def_axioms != r.cor_criterion) c.violation(fb->name + ": the two saturation tests disagree");
    c.results.push_back(j);
  }
}

void run_centric_radical(Ctx& c) {
  for (auto [fb, fam] : fusion_targets(c)) {
    const FusionSystem& F = c.build.fusion(fb->name);
    const int p = F.prime();
    auto family = c.build.family(F, fam);
    auto classes = f_classes(F, family);
    c.table.title("centric-radical: " + fb->name + " over " + family_name(fam));
    json cls = json::array();
    json centric = json::array(), both = json::array();
    for (const FClass& k : classes) {
      SubgroupFlags f = classify(F, k.rep);
      int fully_normalized = 0;
      for (const PSub& P : k.s_classes)
        if (classify(F, P).fully_normalized) ++fully_normalized;
      bool coprime = std::gcd(fully_normalized, p) == 1;
      std::string name = render_sub(F, k.rep);
      cls.push_back(json{{"rep", name}, {"members", k.members.size()}, {"s_classes", k.s_classes.size()},
                         {"fully_normalized_s_classes", fully_normalized}, {"coprime_to_p", coprime},
                         {"flags", flags_json(f)}});
      if (f.centric) centric.push_back(name);
      if (f.centric && f.radical) both.push_back(name);
      std::string tags = std::string(f.centric ? " centric" : "") + (f.radical ? " radical" : "");
      c.table.line(name + ": " + std::to_string(k.s_classes.size()) + " S-classes, " + std::to_string(fully_normalized) +
                   " fully normalized" + tags);
      if (!coprime)
        c.violation(fb->name + ": " + std::to_string(fully_normalized) + " fully normalized S-classes in the class of " +
                    name);
    }
    c.table.row("F-classes", (long long)classes.size());
    c.table.row("centric", (long long)centric.size());
    c.table.row("centric and radical", (long long)both.size());
    c.results.push_back(json{{"fusion", fb->name}, {"family", family_name(fam)}, {"classes", cls},
                             {"centric", centric}, {"centric_radical", both}});
  }
}

void run_bullet(Ctx& c) {
  for (auto [fb, fam] : fusion_targets(c)) {
    const FusionSystem& F = c.build.fusion(fb->name);
    const PToralGroup& S = F.group();
    auto family = c.build.family(F, fam);
    BulletContext ctx = BulletContext::make(S, F.W());
    c.table.title("bullet: " + fb->name + " over " + family_name(fam));
    c.table.row("|W|", (long long)ctx.W.size());
    c.table.row("m", (long long)ctx.m);
    json rows = json::array();
    std::vector<PSub> bul;
    int fails = 0;
    auto fail = [&](const std::string& what) {
      if (fails++ < 10) c.violation(fb->name + ": " + what);
    };
    for (const PSub& P : family) {
      BulletParts parts = bullet_parts(ctx, P);
      const PSub& b = parts.bullet;
      bul.push_back(b);
      bool contains = sub::contains(S, b, P);
      bool idem = bullet(ctx, b) == b;
      bool norm = sub::contains(S, normalizer(S, b), normalizer(S, P));
      bool invariant = true;
      for (const Morphism& f : F.rep_hom(b, F.whole()))
        if (mor::image_of(S, f, b) != bullet(ctx, mor::image_of(S, f, P))) invariant = false;
      std::string name = render_sub(F, P);
      rows.push_back(json{{"P", name}, {"power", render_sub(F, parts.power)}, {"I", parts.I.to_string()},
                          {"I0", parts.I0.to_string()}, {"bullet", render_sub(F, b)}, {"idempotent", idem},
                          {"normalizer_grows", norm}, {"conjugation_invariant", invariant}});
      c.table.line(name + " -> " + render_sub(F, b));
      if (!contains) fail("P is not inside its bullet for " + name);
      if (!idem) fail("bullet is not idempotent at " + name);
      if (!norm) fail("N_S(P) is not inside N_S(P bullet) for " + name);
      if (!invariant) fail("bullet does not commute with fusion at " + name);
    }
    long long pairs = 0;
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = 0; j < family.size(); ++j)
        if (i != j && sub::contains(S, family[j], family[i])) {
          ++pairs;
          if (!sub::contains(S, bul[j], bul[i]))
            fail("bullet is not monotone on " + render_sub(F, family[i]) + " <= " + render_sub(F, family[j]));
        }
    auto reps = f_bullet(F, ctx, family);
    json classes = json::array();
    for (const PSub& R : reps) classes.push_back(render_sub(F, R));
    c.table.row("subgroups", (long long)family.size());
    c.table.row("comparable pairs", pairs);
    c.table.row("F-bullet classes", (long long)reps.size());
    c.results.push_back(json{{"fusion", fb->name}, {"family", family_name(fam)}, {"W_order", ctx.W.size()},
                             {"m", ctx.m}, {"subgroups", rows}, {"comparable_pairs", pairs},
                             {"f_bullet_classes", classes}});
  }
}

void run_normalizer(Ctx& c) {
  for (auto [fb, fam] : fusion_targets(c)) {
    const FusionSystem& F = c.build.fusion(fb->name);
    auto family = c.build.family(F, fam);
    bool saturated = check_saturated(F, family).saturated;
    c.table.title("normalizer: " + fb->name + " over " + family_name(fam));
    c.table.row("F saturated", saturated);
    json rows = json::array();
    int checked = 0;
    for (const PSub& Q : family) {
      if (!Q.is_finite()) continue;
      for (const AutSubgroupK& K : {AutSubgroupK::trivial(Q), AutSubgroupK::all(Q), AutSubgroupK::inner_S(Q)}) {
        KFlags kf = classify_K(F, Q, K);
        json row{{"Q", render_sub(F, Q)}, {"K", K.describe()}, {"fully_K_normalized", kf.fully_K_normalized},
                 {"fully_K_automized", kf.fully_K_automized}, {"N_K", kf.n_K.to_string()},
                 {"aut_F_K", kf.aut_F_K}, {"aut_S_K", kf.aut_S_K}};
        std::string line = render_sub(F, Q) + ", K = " + K.describe() + ": |N^K| " + kf.n_K.to_string();
        if (kf.fully_K_normalized && saturated) {
          NormalizerReport r = check_normalizer_saturated(F, Q, K, saturated, family);
          ++checked;
          row["N"] = sub::to_string(F.group(), r.N);
          row["subsystem_saturated"] = r.saturation.saturated;
          line += r.saturation.saturated ? ", subsystem saturated" : ", subsystem NOT saturated";
          if (r.applicable && !r.saturation.saturated)
            c.violation(fb->name + ": normalizer subsystem of " + render_sub(F, Q) + " for K = " + K.describe() +
                        " is not saturated");
        }
        c.table.line(line);
        rows.push_back(row);
      }
    }
    c.table.row("subsystems checked", (long long)checked);
    c.results.push_back(json{{"fusion", fb->name}, {"family", family_name(fam)}, {"saturated", saturated},
                             {"pairs", rows}, {"subsystems_checked", checked}});
  }
}

std::vector<const Block*> pair_targets(const Ctx& c) {
  auto pairs = c.doc.of_kind("pair");
  if (pairs.empty()) throw InputError("the spec has no pair block");
  return pairs;
}

void run_extension(Ctx& c) {
  for (const Block* pb : pair_targets(c)) {
    GroupExtensionPair P = c.build.pair(*pb);
    ExtensionResult R = build_extension(P.U);
    c.table.title("extension: " + pb->name);
    c.table.row("|Mor(L)|", (long long)P.U.L.cat.num_morphisms());
    c.table.row("|Mor(L_U)|", (long long)R.LU.cat.num_morphisms());
    c.table.row("|G|", (long long)P.U.G.order());
    c.table.row("|Out_typ(L)|", (long long)P.U.autos.out_order);
    json claims = json::array();
    for (const Claim& cl : R.claims) {
      claims.push_back(json{{"name", cl.name}, {"ok", cl.ok}, {"detail", cl.detail}});
      c.table.row(cl.name, std::string(cl.ok ? "pass" : "FAIL") + (cl.detail.empty() ? "" : "  " + cl.detail));
      if (!cl.ok) c.violation(pb->name + ": claim " + cl.name + " fails: " + cl.detail);
    }
    c.results.push_back(json{{"pair", pb->name}, {"L_morphisms", P.U.L.cat.num_morphisms()},
                             {"LU_morphisms", R.LU.cat.num_morphisms()}, {"G_order", P.U.G.order()},
                             {"T_objects", R.T.num_objects()}, {"T_morphisms", R.T.cat.num_morphisms()},
                             {"claims", claims}});
  }
}

void run_twisting(Ctx& c) {
  const int N = c.opt.truncation;
  if (N < 1 || N > 6) throw InputError("--truncation must lie in 1..6");
  for (const Block* pb : pair_targets(c)) {
    GroupExtensionPair P = c.build.pair(*pb);
    const ExtensionPair& U = P.U;
    AutTyp K = aut_typ(U.L, U.autos, N);
    Nerve NL = nerve(U.L.cat, N);
    TwistingFunction phi = twisting_from_pair(U, K, N);
    TwistingReport tr = check_twisting(phi, K.K);
    auto cocycle = check_cocycle(U);
    ExtensionPair back = pair_from_twisting(U.L, U.autos, K, phi);
    auto iso = check_pair_iso(back, U, pair_roundtrip_iso(U, back));
    bool again = twisting_from_pair(back, K, N).phi == phi.phi;
    auto group = K.K.check_group(1 << 16, 2000, c.opt.seed);
    auto action = check_action(K, U.L, NL, 1 << 20, 2000, c.opt.seed);
    NerveIsoReport nr = lu_twisted_product_iso(U, K, N);

    c.table.title("twisting: " + pb->name + ", truncation " + std::to_string(N));
    c.table.row("|Aut_typ(L)| objects", (long long)K.num_autos);
    c.table.row("|Aut_L(S)|", (long long)K.num_aut_S);
    c.table.row("simplicial group", !group);
    c.table.row("action on the nerve", !action);
    c.table.row("twisting relations", tr.ok());
    c.table.row("cocycle identity", !cocycle);
    c.table.row("pair -> phi -> pair", !iso);
    c.table.row("phi -> pair -> phi", again);
    c.table.row("N L_U = E(phi_U)", nr.ok);
    std::ostringstream sizes;
    for (std::size_t i = 0; i < nr.level_sizes.size(); ++i) sizes << (i ? " " : "") << nr.level_sizes[i];
    c.table.row("level sizes", sizes.str());
    if (group) c.violation(pb->name + ": Aut_typ nerve is not a simplicial group: " + *group);
    if (action) c.violation(pb->name + ": action fails: " + *action);
    for (const std::string& f : tr.failures) c.violation(pb->name + ": twisting " + f);
    if (!tr.map_witness.empty()) c.violation(pb->name + ": twisting map " + tr.map_witness);
    if (cocycle) c.violation(pb->name + ": cocycle " + *cocycle);
    if (iso) c.violation(pb->name + ": roundtrip pair is not isomorphic: " + *iso);
    if (!again) c.violation(pb->name + ": roundtrip twisting differs");
    if (!nr.ok) c.violation(pb->name + ": nerve isomorphism fails: " + nr.witness);
    c.results.push_back(json{{"pair", pb->name}, {"truncation", N}, {"autos", K.num_autos},
                             {"aut_S", K.num_aut_S}, {"simplicial_group", !group}, {"action", !action},
                             {"twisting_ok", tr.ok()}, {"failed_relations", tr.failed_relations},
                             {"cocycle", !cocycle}, {"pair_roundtrip", !iso}, {"twisting_roundtrip", again},
                             {"nerve_iso", nr.ok}, {"level_sizes", nr.level_sizes}});
  }
}

struct LinkingData {
  TransporterSystem T;
  LinkingQuotient Q;
};

std::vector<std::pair<const Block*, LinkingData>> linking_targets(Ctx& c) {
  std::vector<std::pair<const Block*, LinkingData>> out;
  for (const Block* fb : c.doc.of_kind("fusion")) {
    if (!fb->find("ambient")) continue;
    const FusionSystem& F = c.build.fusion(fb->name);
    const FiniteGroup& G = F.ambient_group();
    ElemSet S = F.ambient_embedding();
    std::sort(S.begin(), S.end());
    TransporterSystem T = transporter_of(G, S, centric_objects(G, S, F.prime()), F.prime());
    LinkingQuotient Q = linking_quotient(T);
    out.emplace_back(fb, LinkingData{std::move(T), std::move(Q)});
  }
  return out;
}

json axioms_json(const AxiomReport& r) {
  json a = json::array();
  for (const AxiomVerdict& v : r.verdicts) a.push_back(json{{"axiom", v.axiom}, {"ok", v.ok}, {"witness", v.witness}});
  return a;
}

void run_transporter(Ctx& c) {
  auto targets = linking_targets(c);
  if (targets.empty()) throw InputError("the spec has no ambient fusion block");
  for (auto& [fb, d] : targets) {
    AxiomReport ta = check_transporter_axioms(d.T);
    AxiomReport la = check_linking_axioms(d.Q.L);
    c.table.title("transporter-axioms: " + fb->name);
    c.table.row("objects", (long long)d.T.num_objects());
    c.table.row("|Mor(T)|", (long long)d.T.cat.num_morphisms());
    c.table.row("|Mor(L)|", (long long)d.Q.L.cat.num_morphisms());
    for (const AxiomVerdict& v : ta.verdicts) c.table.row("transporter " + v.axiom, v.ok);
    for (const AxiomVerdict& v : la.verdicts) c.table.row("linking " + v.axiom, v.ok);
    for (const AxiomVerdict& v : ta.verdicts)
      if (!v.ok) c.violation(fb->name + ": transporter axiom " + v.axiom + ": " + v.witness);
    for (const AxiomVerdict& v : la.verdicts)
      if (!v.ok) c.violation(fb->name + ": linking axiom " + v.axiom + ": " + v.witness);
    c.results.push_back(json{{"fusion", fb->name}, {"objects", d.T.num_objects()},
                             {"transporter_morphisms", d.T.cat.num_morphisms()},
                             {"linking_morphisms", d.Q.L.cat.num_morphisms()}, {"transporter", axioms_json(ta)},
                             {"linking", axioms_json(la)}});
  }
}

void write_file(Ctx& c, const std::string& block, const std::string& what, const std::string& body, json info) {
  std::filesystem::path dir(c.opt.out_dir);
  std::filesystem::create_directories(dir);
  std::string name = block + "." + what + ".json";
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw InputError("cannot write " + (dir / name).string());
  f << body << "\n";
  info["file"] = name;
  info["block"] = block;
  info["what"] = what;
  c.table.line("wrote " + name);
  c.results.push_back(info);
}

void run_dump(Ctx& c) {
  static const std::set<std::string> kinds{"transporter", "linking", "lu", "nerve", "twisted"};
  std::set<std::string> what;
  for (const std::string& w : c.opt.what) {
    if (!kinds.count(w)) throw InputError("unknown dump selection '" + w + "'");
    what.insert(w);
  }
  c.table.title("dump");
  if (what.empty()) {
    c.table.line("nothing selected");
    return;
  }
  const int N = c.opt.truncation;
  if (N < 1 || N > 6) throw InputError("--truncation must lie in 1..6");
  if (what.count("transporter") || what.count("linking") || what.count("nerve"))
    for (auto& [fb, d] : linking_targets(c)) {
      if (what.count("transporter"))
        write_file(c, fb->name, "transporter", d.T.cat.to_json(),
                   json{{"objects", d.T.num_objects()}, {"morphisms", d.T.cat.num_morphisms()}});
      if (what.count("linking"))
        write_file(c, fb->name, "linking", d.Q.L.cat.to_json(),
                   json{{"objects", d.Q.L.num_objects()}, {"morphisms", d.Q.L.cat.num_morphisms()}});
      if (what.count("nerve")) {
        Nerve NL = nerve(d.Q.L.cat, N);
        write_file(c, fb->name, "nerve", NL.X.to_json(), json{{"sizes", NL.X.size}});
      }
    }
  if (what.count("lu") || what.count("twisted"))
    for (const Block* pb : c.doc.of_kind("pair")) {
      GroupExtensionPair P = c.build.pair(*pb);
      if (what.count("lu")) {
        LUCategory LU = build_LU(P.U);
        write_file(c, pb->name, "lu", LU.cat.to_json(),
                   json{{"objects", LU.cat.num_objects()}, {"morphisms", LU.cat.num_morphisms()}});
      }
      if (what.count("twisted")) {
        AutTyp K = aut_typ(P.U.L, P.U.autos, N);
        Nerve NL = nerve(P.U.L.cat, N);
        TwistedProduct E = twisted_product(twisting_from_pair(P.U, K, N), K, P.U.L, NL);
        write_file(c, pb->name, "twisted", E.X.to_json(), json{{"sizes", E.X.size}});
      }
    }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"saturation", "centric-radical", "bullet",   "normalizer",
                                          "extension",  "twisting",        "transporter-axioms", "dump"};
  return c;
}

Report run_report(const SpecDocument& doc, const std::string& spec_text, const Options& opt) {
  Builder build(doc);
  Table table;
  json results = json::array();
  std::vector<std::string> violations;
  Ctx c{doc, opt, build, table, results, violations};
  const std::string& cmd = opt.command;
  if (cmd == "saturation") run_saturation(c);
  else if (cmd == "centric-radical") run_centric_radical(c);
  else if (cmd == "bullet") run_bullet(c);
  else if (cmd == "normalizer") run_normalizer(c);
  else if (cmd == "extension") run_extension(c);
  else if (cmd == "twisting") run_twisting(c);
  else if (cmd == "transporter-axioms") run_transporter(c);
  else if (cmd == "dump") run_dump(c);
  else throw InputError("unknown command '" + cmd + "'");

  Report r;
  r.exit_code = violations.empty() ? 0 : 1;
  json blocks = json::array();
  for (const Block& b : doc.blocks) blocks.push_back(json{{"kind", b.kind}, {"name", b.name}});
  r.json["schema"] = kSchema;
  r.json["command"] = cmd;
  r.json["spec"] = json{{"path", opt.spec_path}, {"digest", fnv1a64(spec_text)}, {"blocks", blocks}};
  r.json["options"] = json{{"family", opt.family}, {"truncation", opt.truncation}, {"seed", opt.seed}, {"what", opt.what}};
  r.json["results"] = results;
  r.json["violations"] = violations;
  r.json["exit_code"] = r.exit_code;
  std::ostringstream head;
  head << "fusionkit " << cmd << "  spec " << opt.spec_path << "  " << fnv1a64(spec_text) << "\n\n";
  r.table = head.str() + table.str() + "\n" +
            (violations.empty() ? "OK: no violations\n" : std::to_string(violations.size()) + " violation(s)\n");
  return r;
}

int main_cli(int argc, char** argv) {
  CLI::App app{"Fusion systems, linking systems and their extensions on small examples"};
  Options opt;
  std::string json_out;
  app.add_option("command", opt.command, "Report to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--spec", opt.spec_path, "Spec file")->required();
  app.add_option("--family", opt.family, "Family block to range over");
  app.add_option("--json", json_out, "Write the JSON report here");
  app.add_option("--truncation", opt.truncation, "Simplicial truncation level")->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--what", opt.what, "dump: transporter, linking, lu, nerve, twisted")->delimiter(',');
  app.add_option("--out", opt.out_dir, "dump: output directory")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    bounds() = Bounds::from_env();
    std::ifstream in(opt.spec_path, std::ios::binary);
    if (!in) throw InputError("cannot read " + opt.spec_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    SpecDocument doc = parse_spec(text);
    Report r = run_report(doc, text, opt);
    std::cout << r.table;
    if (!json_out.empty()) {
      std::ofstream out(json_out, std::ios::binary);
      if (!out) throw InputError("cannot write " + json_out);
      out << r.json.dump(2) << "\n";
    }
    return r.exit_code;
  } catch (const InputError& e) {
    std::cerr << "fusionkit: input error: " << e.what() << "\n";
    return 2;
  } catch (const BoundExceeded& e) {
    std::cerr << "fusionkit: bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const StructureError& e) {
    std::cerr << "fusionkit: structure error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fk::cli
