#include "fk/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fk {

Perm parse_cycles(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int maxpt = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw InputError("cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) throw InputError("cycle notation: unterminated cycle in \"" + text + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw InputError("cycle notation: expected point in \"" + text + "\"");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1) throw InputError("cycle notation: points are 1-based");
      cyc.push_back(v - 1);
      maxpt = std::max(maxpt, v);
    }
    cycles.push_back(cyc);
  }
  int n = degree < 0 ? maxpt : degree;
  if (maxpt > n) throw InputError("cycle notation: point exceeds degree");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  // Cycles compose right to left like permutation products.
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Perm c(n);
    std::iota(c.begin(), c.end(), 0);
    std::set<int> seen;
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!seen.insert((*it)[k]).second) throw InputError("cycle notation: repeated point in a cycle");
      c[(*it)[k]] = (*it)[(k + 1) % it->size()];
    }
    p = perm_mul(c, p);
  }
  return p;
}

std::string perm_to_cycles(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == int(i)) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = p[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

FiniteGroup FiniteGroup::from_perms(const std::vector<Perm>& gens, int degree) {
  FiniteGroup g;
  g.degree_ = degree;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& p : gens)
    if (int(p.size()) != degree) throw InputError("generator degree mismatch");
  std::map<Perm, int> index;
  g.perms_.push_back(id);
  index[id] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Perm y = perm_mul(g.perms_[x], s);
      if (index.count(y)) continue;
      if (int(g.perms_.size()) >= bounds().max_group_order)
        throw BoundExceeded("group order exceeds " + std::to_string(bounds().max_group_order));
      index[y] = int(g.perms_.size());
      g.perms_.push_back(y);
      queue.push_back(int(g.perms_.size()) - 1);
    }
  }
  g.n_ = int(g.perms_.size());
  g.table_.resize(std::size_t(g.n_) * g.n_);
  for (int a = 0; a < g.n_; ++a)
    for (int b = 0; b < g.n_; ++b) g.table_[std::size_t(a) * g.n_ + b] = index.at(perm_mul(g.perms_[a], g.perms_[b]));
  for (const auto& s : gens) {
    int id_s = index.at(s);
    if (id_s != 0 && std::find(g.gens_.begin(), g.gens_.end(), id_s) == g.gens_.end()) g.gens_.push_back(id_s);
  }
  for (const auto& p : g.perms_) g.labels_.push_back(perm_to_cycles(p));
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<int> table, int n, std::vector<std::string> labels) {
  if (n > bounds().max_group_order) throw BoundExceeded("group order exceeds " + std::to_string(bounds().max_group_order));
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(table);
  if (int(g.table_.size()) != n * n) throw StructureError("group table has wrong size");
  for (int a = 0; a < n; ++a)
    if (g.mul(0, a) != a || g.mul(a, 0) != a) throw StructureError("element 0 is not the identity");
  if (labels.empty())
    for (int a = 0; a < n; ++a) labels.push_back("e" + std::to_string(a));
  g.labels_ = std::move(labels);
  g.finish();
  // Generators: greedy.
  g.gens_ = g.generators_of(g.all());
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  if (n == 1) return from_perms({}, 1);
  return from_perms({c}, n);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.has_perms() && b.has_perms()) {
    int n = a.degree() + b.degree();
    std::vector<Perm> gens;
    for (int x : a.generators()) {
      Perm p(n);
      std::iota(p.begin(), p.end(), 0);
      for (int i = 0; i < a.degree(); ++i) p[i] = a.perm(x)[i];
      gens.push_back(p);
    }
    for (int x : b.generators()) {
      Perm p(n);
      std::iota(p.begin(), p.end(), 0);
      for (int i = 0; i < b.degree(); ++i) p[a.degree() + i] = a.degree() + b.perm(x)[i];
      gens.push_back(p);
    }
    return from_perms(gens, n);
  }
  int n = a.order() * b.order();
  std::vector<int> t(std::size_t(n) * n);
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) labels.push_back("(" + a.label(x / b.order()) + "," + b.label(x % b.order()) + ")");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[std::size_t(x) * n + y] = a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order());
  return from_table(std::move(t), n, std::move(labels));
}

void FiniteGroup::finish() {
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
  for (int a = 0; a < n_; ++a)
    if (inv_[a] < 0) throw StructureError("group table: element without inverse");
}

int FiniteGroup::pow(int a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = 0;
  while (e--) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

int FiniteGroup::find_perm(const Perm& p) const {
  for (int i = 0; i < n_; ++i)
    if (perms_[i] == p) return i;
  return -1;
}

bool FiniteGroup::verify_table() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  for (int a = 0; a < n_; ++a)
    if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
  return true;
}

ElemSet FiniteGroup::closure(const std::vector<int>& gens) const {
  std::vector<char> in(n_, 0);
  std::vector<int> out{0};
  in[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int y = mul(out[i], g);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

ElemSet FiniteGroup::all() const {
  ElemSet a(n_);
  std::iota(a.begin(), a.end(), 0);
  return a;
}

bool FiniteGroup::contains(const ElemSet& H, int x) const { return std::binary_search(H.begin(), H.end(), x); }

bool FiniteGroup::subset(const ElemSet& A, const ElemSet& B) const { return std::includes(B.begin(), B.end(), A.begin(), A.end()); }

bool FiniteGroup::is_subgroup(const ElemSet& H) const {
  if (!contains(H, 0)) return false;
  for (int a : H)
    for (int b : H)
      if (!contains(H, mul(a, inv(b)))) return false;
  return true;
}

ElemSet FiniteGroup::conj_set(int g, const ElemSet& H) const {
  ElemSet out;
  for (int h : H) out.push_back(conj(g, h));
  std::sort(out.begin(), out.end());
  return out;
}

ElemSet FiniteGroup::normalizer(const ElemSet& H) const {
  ElemSet out;
  for (int g = 0; g < n_; ++g)
    if (conj_set(g, H) == H) out.push_back(g);
  return out;
}

ElemSet FiniteGroup::centralizer(const ElemSet& H) const {
  ElemSet out;
  for (int g = 0; g < n_; ++g) {
    bool ok = true;
    for (int h : H)
      if (mul(g, h) != mul(h, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

bool FiniteGroup::is_normal(const ElemSet& N, const ElemSet& in) const {
  for (int g : in)
    if (conj_set(g, N) != N) return false;
  return true;
}

ElemSet FiniteGroup::intersect(const ElemSet& A, const ElemSet& B) const {
  ElemSet out;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return out;
}

std::vector<int> FiniteGroup::transporter(const ElemSet& A, const ElemSet& B) const {
  std::vector<int> out;
  for (int g = 0; g < n_; ++g) {
    bool ok = true;
    for (int a : A)
      if (!contains(B, conj(g, a))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

bool is_prime_power(long long n, int p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

long long p_part(long long n, int p) {
  long long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

ElemSet FiniteGroup::sylow(int p, const ElemSet& start) const {
  ElemSet P = start;
  long long target = p_part(n_, p);
  while ((long long)P.size() < target) {
    ElemSet N = normalizer(P);
    bool grown = false;
    for (int x : N) {
      if (contains(P, x)) continue;
      // x has p-power order modulo P
      int y = x;
      bool ok = false;
      for (int i = 0; i < 64; ++i) {
        y = pow(y, p);
        if (contains(P, y)) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      std::vector<int> gens = P;
      gens.push_back(x);
      P = closure(gens);
      grown = true;
      break;
    }
    if (!grown) throw StructureError("sylow: could not extend p-subgroup");
  }
  return P;
}

ElemSet FiniteGroup::op(int p) const {
  std::vector<int> gens;
  for (int x = 0; x < n_; ++x) {
    if (!is_prime_power(element_order(x), p) || x == 0) continue;
    // normal closure of x
    std::vector<int> conjs;
    for (int g = 0; g < n_; ++g) conjs.push_back(conj(g, x));
    ElemSet N = closure(conjs);
    if (is_prime_power((long long)N.size(), p)) gens.push_back(x);
  }
  return closure(gens);
}

ElemSet FiniteGroup::p_prime_elements(int p) const {
  ElemSet out;
  for (int x = 0; x < n_; ++x)
    if (element_order(x) % p != 0) out.push_back(x);
  return out;
}

std::vector<ElemSet> FiniteGroup::all_subgroups() const {
  std::set<ElemSet> found;
  std::vector<ElemSet> cyclics;
  for (int x = 0; x < n_; ++x) {
    ElemSet c = closure({x});
    if (found.insert(c).second) cyclics.push_back(c);
  }
  std::vector<ElemSet> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const auto& H : frontier)
      for (const auto& C : cyclics) {
        if (subset(C, H)) continue;
        std::vector<int> gens = H;
        gens.insert(gens.end(), C.begin(), C.end());
        ElemSet J = closure(generators_of(closure(gens)));
        if (found.insert(J).second) next.push_back(J);
      }
    frontier = std::move(next);
  }
  std::vector<ElemSet> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const ElemSet& a, const ElemSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> FiniteGroup::generators_of(const ElemSet& H) const {
  std::vector<int> gens;
  ElemSet cur{0};
  for (int h : H) {
    if (contains(cur, h)) continue;
    gens.push_back(h);
    cur = closure(gens);
  }
  return gens;
}

FiniteGroup FiniteGroup::subgroup_group(const ElemSet& H) const {
  const int m = int(H.size());
  std::vector<int> pos(n_, -1);
  for (int i = 0; i < m; ++i) pos[H[i]] = i;
  if (H.empty() || H[0] != 0) throw StructureError("subgroup must contain the identity");
  std::vector<int> t(std::size_t(m) * m);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    labels.push_back(labels_[H[i]]);
    for (int j = 0; j < m; ++j) {
      int y = pos[mul(H[i], H[j])];
      if (y < 0) throw StructureError("subgroup_group: not closed");
      t[std::size_t(i) * m + j] = y;
    }
  }
  FiniteGroup g = from_table(std::move(t), m, std::move(labels));
  if (has_perms()) {
    g.degree_ = degree_;
    for (int h : H) g.perms_.push_back(perms_[h]);
  }
  return g;
}

FiniteGroup FiniteGroup::quotient(const ElemSet& N, std::vector<int>* coset_of, std::vector<int>* rep) const {
  std::vector<int> cos(n_, -1);
  std::vector<int> reps;
  for (int g = 0; g < n_; ++g) {
    if (cos[g] >= 0) continue;
    int c = int(reps.size());
    reps.push_back(g);
    for (int x : N) cos[mul(g, x)] = c;
  }
  const int m = int(reps.size());
  std::vector<int> t(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[std::size_t(i) * m + j] = cos[mul(reps[i], reps[j])];
  std::vector<std::string> labels;
  for (int r : reps) labels.push_back(labels_[r] + "N");
  if (coset_of) *coset_of = cos;
  if (rep) *rep = reps;
  return from_table(std::move(t), m, std::move(labels));
}

bool FiniteGroup::is_p_group(int p) const { return is_prime_power(n_, p); }

}  // namespace fk
