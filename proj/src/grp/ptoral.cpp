#include "fk/ptoral.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fk {

std::string Order::to_string() const { return "(" + std::to_string(rank) + "," + std::to_string(count) + ")"; }

PToralGroup::PToralGroup(int p, int rank, FiniteGroup pi, const std::vector<int>& gen_ids, const std::vector<IntMatrix>& action)
    : p_(p), r_(rank), pi_(std::move(pi)) {
  if (!is_prime_power(pi_.order(), p)) throw InputError("component group order " + std::to_string(pi_.order()) + " is not a power of " + std::to_string(p));
  if (gen_ids.size() != action.size()) throw InputError("one action matrix is needed per generator");
  for (const auto& m : action)
    if (m.rows() != r_ || m.cols() != r_) throw InputError("action matrix has the wrong size");
  const int n = pi_.order();
  rho_.assign(n, IntMatrix());
  std::vector<char> seen(n, 0);
  rho_[0] = IntMatrix::identity(r_);
  seen[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gen_ids.size(); ++k) {
      int y = pi_.mul(x, gen_ids[k]);
      if (seen[y]) continue;
      seen[y] = 1;
      rho_[y] = rho_[x] * action[k];
      queue.push_back(y);
    }
  }
  for (int x = 0; x < n; ++x)
    if (!seen[x]) throw InputError("action generators do not generate the component group");
  for (std::size_t k = 0; k < gen_ids.size(); ++k)
    if (!(rho_[gen_ids[k]] == action[k])) throw InputError("action is not a homomorphism");
  for (int a = 0; a < n; ++a) {
    i64 d = determinant(rho_[a]);
    if (d != 1 && d != -1) throw InputError("action matrix with determinant other than +-1");
    for (int b = 0; b < n; ++b)
      if (!(rho_[pi_.mul(a, b)] == rho_[a] * rho_[b])) throw InputError("action is not a homomorphism");
  }
}

PToralGroup PToralGroup::finite(int p, FiniteGroup g) {
  std::vector<int> gens = g.generators();
  std::vector<IntMatrix> act(gens.size(), IntMatrix(0, 0));
  return PToralGroup(p, 0, std::move(g), gens, act);
}

Elt PToralGroup::mul(const Elt& a, const Elt& b) const {
  if (r_ == 0) return {a.t, pi_.mul(a.g, b.g)};
  return {torus::add(p_, a.t, torus::apply(p_, rho_[a.g], b.t)), pi_.mul(a.g, b.g)};
}

Elt PToralGroup::inv(const Elt& a) const {
  int gi = pi_.inv(a.g);
  if (r_ == 0) return {a.t, gi};
  return {torus::neg(p_, torus::apply(p_, rho_[gi], a.t)), gi};
}

Elt PToralGroup::conj(const Elt& x, const Elt& y) const { return mul(mul(x, y), inv(x)); }

Elt PToralGroup::pow(const Elt& a, i64 n) const {
  Elt base = n < 0 ? inv(a) : a;
  if (n < 0) n = -n;
  Elt r = identity();
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

int PToralGroup::element_order_exp(const Elt& a) const {
  int og = pi_.element_order(a.g);
  int e = 0;
  while (og > 1) {
    og /= p_;
    ++e;
  }
  Elt y = pow(a, ipow(p_, e));
  return e + y.t.k;
}

std::string PToralGroup::to_string(const Elt& a) const {
  if (r_ == 0) return pi_.label(a.g);
  return "[" + torus::to_string(p_, a.t) + " " + pi_.label(a.g) + "]";
}

int PSub::index_of(int h) const {
  auto it = std::lower_bound(H.begin(), H.end(), h);
  if (it == H.end() || *it != h) return -1;
  return int(it - H.begin());
}

const TorusElt& PSub::tau_of(int h) const {
  int i = index_of(h);
  if (i < 0) throw StructureError("tau_of: element not in component image");
  return tau[i];
}

bool PSub::operator<(const PSub& o) const {
  if (H != o.H) return H < o.H;
  if (!(A == o.A)) return A < o.A;
  return tau < o.tau;
}

namespace {

TorusElt concat(int p, const std::vector<TorusElt>& parts) {
  int k = 0;
  for (const auto& x : parts) k = std::max(k, x.k);
  std::vector<i64> num;
  for (const auto& x : parts) {
    i64 f = ipow(p, k - x.k);
    for (i64 v : x.num) num.push_back(mul_checked(v, f));
  }
  return torus::make(p, k, std::move(num));
}

IntMatrix one_minus(const IntMatrix& M) { return IntMatrix::identity(M.rows()) - M; }

void check_pi0(const PSub& P) {
  if (P.order().count > bounds().max_pi0) throw BoundExceeded("component group of subgroup exceeds " + std::to_string(bounds().max_pi0));
}

}  // namespace

namespace sub {

PSub whole(const PToralGroup& S) {
  PSub P;
  P.H = S.pi().all();
  P.A = TorusSub::whole(S.prime(), S.rank());
  P.tau.assign(P.H.size(), torus::zero(S.rank()));
  return P;
}

PSub trivial(const PToralGroup& S) {
  PSub P;
  P.H = {0};
  P.A = TorusSub::trivial(S.prime(), S.rank());
  P.tau = {torus::zero(S.rank())};
  return P;
}

PSub torus(const PToralGroup& S) {
  PSub P;
  P.H = {0};
  P.A = TorusSub::whole(S.prime(), S.rank());
  P.tau = {torus::zero(S.rank())};
  return P;
}

PSub closure(const PToralGroup& S, const std::vector<Elt>& gens, const IntMatrix& div_in) {
  const int p = S.prime(), r = S.rank();
  IntMatrix div = div_in.rows() == r ? div_in : IntMatrix(r, 0);
  const FiniteGroup& pi = S.pi();
  std::vector<int> gpi;
  for (const auto& x : gens) gpi.push_back(x.g);
  ElemSet H = pi.closure(gpi);
  IntMatrix all_div(r, 0);
  if (div.cols() > 0)
    for (int h : H) all_div = IntMatrix::hstack(all_div, S.rho(h) * div);
  TorusSub A = TorusSub::from_generators(p, r, all_div, {});
  std::vector<std::optional<Elt>> sigma(pi.order());
  sigma[0] = S.identity();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int h = queue.front();
    queue.pop_front();
    for (const auto& x : gens) {
      Elt y = S.mul(*sigma[h], x);
      if (!sigma[y.g]) {
        sigma[y.g] = y;
        queue.push_back(y.g);
        continue;
      }
      Elt s = S.mul(y, S.inv(*sigma[y.g]));
      if (!A.contains(s.t)) {
        A = A.sum(TorusSub::from_generators(p, r, IntMatrix(r, 0), {s.t}));
        if (A.finite_order() * i64(H.size()) > bounds().max_pi0)
          throw BoundExceeded("component group of subgroup exceeds " + std::to_string(bounds().max_pi0));
      }
    }
  }
  PSub P;
  P.H = H;
  P.A = A;
  for (int h : H) P.tau.push_back(A.canon_mod(sigma[h]->t));
  check_pi0(P);
  return P;
}

PSub join(const PToralGroup& S, const PSub& P, const PSub& Q) {
  std::vector<Elt> gens = generators(S, P);
  for (const auto& x : generators(S, Q)) gens.push_back(x);
  return closure(S, gens, IntMatrix::hstack(P.A.div_basis(), Q.A.div_basis()));
}

PSub intersect(const PToralGroup& S, const PSub& P, const PSub& Q) {
  const int p = S.prime();
  PSub R;
  R.A = P.A.intersect(Q.A);
  IntMatrix M = IntMatrix::vstack(P.A.ann(), Q.A.ann());
  for (int h : P.H) {
    if (Q.index_of(h) < 0) continue;
    TorusElt c = concat(p, {torus::apply(p, P.A.ann(), P.tau_of(h)), torus::apply(p, Q.A.ann(), Q.tau_of(h))});
    auto t = solve_linear(p, M, c);
    if (!t) continue;
    R.H.push_back(h);
    R.tau.push_back(R.A.canon_mod(*t));
  }
  return R;
}

PSub from_pi(const PToralGroup& S, const ElemSet& H) {
  std::vector<Elt> gens;
  for (int h : S.pi().generators_of(H)) gens.push_back(S.make(torus::zero(S.rank()), h));
  return closure(S, gens);
}

bool contains(const PToralGroup& S, const PSub& P, const Elt& x) {
  int i = P.index_of(x.g);
  if (i < 0) return false;
  return P.A.contains(torus::sub(S.prime(), x.t, P.tau[i]));
}

bool contains(const PToralGroup& S, const PSub& P, const PSub& Q) {
  for (int h : Q.H)
    if (P.index_of(h) < 0) return false;
  if (!P.A.contains(Q.A)) return false;
  for (std::size_t i = 0; i < Q.H.size(); ++i)
    if (!P.A.contains(torus::sub(S.prime(), Q.tau[i], P.tau_of(Q.H[i])))) return false;
  return true;
}

bool is_normal_in(const PToralGroup& S, const PSub& Q, const PSub& P) {
  return contains(S, P, Q) && contains(S, normalizer(S, Q), P);
}

std::vector<Elt> generators(const PToralGroup& S, const PSub& P) {
  std::vector<Elt> out;
  for (int h : S.pi().generators_of(P.H)) out.push_back(S.make(P.tau_of(h), h));
  for (const auto& a : P.A.finite_gens()) out.push_back(S.torus_elt(a));
  return out;
}

std::vector<Elt> pi0_reps(const PToralGroup& S, const PSub& P) {
  check_pi0(P);
  std::vector<Elt> out;
  auto freps = P.A.finite_reps();
  for (std::size_t i = 0; i < P.H.size(); ++i)
    for (const auto& a : freps) out.push_back(S.make(P.A.canon_mod_identity(torus::add(S.prime(), P.tau[i], a)), P.H[i]));
  return out;
}

std::pair<int, TorusElt> decompose(const PToralGroup& S, const PSub& P, const Elt& x) {
  int i = P.index_of(x.g);
  if (i < 0) throw StructureError("decompose: element outside subgroup");
  TorusElt c = P.A.canon_mod_identity(x.t);
  int j = P.A.finite_index(torus::sub(S.prime(), c, P.tau[i]));
  return {int(i * P.A.finite_order() + j), torus::sub(S.prime(), x.t, c)};
}

std::vector<Elt> elements(const PToralGroup& S, const PSub& P) {
  if (!P.is_finite()) throw InputError("elements: subgroup is infinite");
  return pi0_reps(S, P);
}

std::vector<Elt> elements_bounded(const PToralGroup& S, const PSub& P, int e) {
  const int p = S.prime();
  IntMatrix B = P.A.div_basis();
  const int s = B.cols();
  i64 m = ipow(p, e);
  i64 count = 1;
  for (int i = 0; i < s; ++i) count = mul_checked(count, m);
  if (mul_checked(count, P.order().count) > bounds().max_quotient * i64(64))
    throw BoundExceeded("bounded element enumeration too large");
  std::vector<Elt> out;
  auto reps = pi0_reps(S, P);
  for (i64 n = 0; n < count; ++n) {
    std::vector<i64> x(s);
    i64 rest = n;
    for (int i = 0; i < s; ++i) {
      x[i] = rest % m;
      rest /= m;
    }
    TorusElt d = torus::apply(p, B, torus::make(p, e, x));
    for (const auto& r : reps) out.push_back(S.mul(S.torus_elt(d), r));
  }
  return out;
}

PSub conjugate(const PToralGroup& S, const Elt& x, const PSub& P) {
  const int p = S.prime();
  const FiniteGroup& pi = S.pi();
  PSub Q;
  Q.A = P.A.image(S.rho(x.g));
  std::vector<std::pair<int, TorusElt>> entries;
  for (std::size_t i = 0; i < P.H.size(); ++i) {
    int h2 = pi.conj(x.g, P.H[i]);
    TorusElt t = torus::add(p, torus::apply(p, S.rho(x.g), P.tau[i]), torus::sub(p, x.t, torus::apply(p, S.rho(h2), x.t)));
    entries.push_back({h2, Q.A.canon_mod(t)});
  }
  std::sort(entries.begin(), entries.end());
  for (auto& [h, t] : entries) {
    Q.H.push_back(h);
    Q.tau.push_back(t);
  }
  return Q;
}

PSub power_subgroup(const PToralGroup& S, const PSub& P, int m) {
  if (m < 0) throw InputError("power_subgroup: negative exponent");
  i64 e = ipow(S.prime(), m);
  std::vector<Elt> gens;
  for (const auto& x : pi0_reps(S, P)) gens.push_back(S.pow(x, e));
  return closure(S, gens, P.A.div_basis());
}

std::vector<Elt> coset_reps(const PToralGroup& S, const PSub& N, const PSub& M) {
  if (N.A.rank() != M.A.rank()) throw BoundExceeded("coset_reps: subgroup has infinite index");
  std::vector<Elt> kept;
  for (const auto& c : pi0_reps(S, N)) {
    bool dup = false;
    for (const auto& k : kept)
      if (contains(S, M, S.mul(S.inv(k), c))) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(c);
  }
  return kept;
}

std::string to_string(const PToralGroup& S, const PSub& P) {
  std::ostringstream os;
  os << '<';
  auto gens = generators(S, P);
  for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? ", " : "") << S.to_string(gens[i]);
  if (P.A.rank() > 0) os << (gens.empty() ? "" : ", ") << "torus " << P.A.div_basis().to_string();
  os << "> order " << P.order().to_string();
  return os.str();
}

}  // namespace sub

std::vector<ConjCoset> solve_conj(const PToralGroup& S, const ConjProblem& prob, bool first_only) {
  const int p = S.prime(), r = S.rank();
  const FiniteGroup& pi = S.pi();
  std::vector<std::vector<int>> into_gens;
  for (const auto& [X, Y] : prob.into) into_gens.push_back(pi.generators_of(X.H));
  std::vector<ConjCoset> out;
  const TorusSub whole = TorusSub::whole(p, r);
  for (int g = 0; g < pi.order(); ++g) {
    if (prob.within && prob.within->index_of(g) < 0) continue;
    bool ok = true;
    for (const auto& [x, y] : prob.fix)
      if (pi.conj(g, x.g) != y.g) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (const auto& [X, Y] : prob.lin)
      if (!(S.rho(g) * X == Y)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (const auto& [X, Y] : prob.into) {
      for (int h : X.H)
        if (Y.index_of(pi.conj(g, h)) < 0) {
          ok = false;
          break;
        }
      if (!ok) break;
      if (r > 0 && !Y.A.contains(X.A.image(S.rho(g)))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (r == 0) {
      out.push_back({g, torus::zero(0), whole});
      if (first_only) break;
      continue;
    }
    IntMatrix M(0, r);
    std::vector<TorusElt> rhs;
    for (const auto& [x, y] : prob.fix) {
      M = IntMatrix::vstack(M, one_minus(S.rho(y.g)));
      rhs.push_back(torus::sub(p, y.t, torus::apply(p, S.rho(g), x.t)));
    }
    for (std::size_t k = 0; k < prob.into.size(); ++k) {
      const auto& [X, Y] = prob.into[k];
      for (int h : into_gens[k]) {
        int h2 = pi.conj(g, h);
        M = IntMatrix::vstack(M, Y.A.ann() * one_minus(S.rho(h2)));
        rhs.push_back(torus::apply(p, Y.A.ann(), torus::sub(p, Y.tau_of(h2), torus::apply(p, S.rho(g), X.tau_of(h)))));
      }
    }
    if (prob.within) {
      M = IntMatrix::vstack(M, prob.within->A.ann());
      rhs.push_back(torus::apply(p, prob.within->A.ann(), prob.within->tau_of(g)));
    }
    TorusElt c = concat(p, rhs);
    auto sol = solve_linear(p, M, c);
    if (!sol) continue;
    TorusSub K = TorusSub::kernel(p, M);
    out.push_back({g, K.canon_mod(*sol), K});
    if (first_only) break;
  }
  return out;
}

std::optional<Elt> find_conjugator(const PToralGroup& S, const ConjProblem& prob) {
  auto cs = solve_conj(S, prob, true);
  if (cs.empty()) return std::nullopt;
  return S.make(cs[0].t0, cs[0].g);
}

PSub subgroup_from_cosets(const PToralGroup& S, const std::vector<ConjCoset>& cosets) {
  const ConjCoset* id = nullptr;
  for (const auto& c : cosets)
    if (c.g == 0) id = &c;
  if (!id) throw StructureError("solution set is not a subgroup");
  PSub P;
  P.A = id->K;
  std::vector<std::pair<int, TorusElt>> entries;
  for (const auto& c : cosets) entries.push_back({c.g, P.A.canon_mod(c.t0)});
  std::sort(entries.begin(), entries.end());
  for (auto& [g, t] : entries) {
    P.H.push_back(g);
    P.tau.push_back(t);
  }
  (void)S;
  return P;
}

PSub normalizer(const PToralGroup& S, const PSub& P) {
  ConjProblem prob;
  prob.into.push_back({P, P});
  return subgroup_from_cosets(S, solve_conj(S, prob));
}

PSub centralizer(const PToralGroup& S, const PSub& P) {
  ConjProblem prob;
  for (const auto& x : sub::generators(S, P)) prob.fix.push_back({x, x});
  IntMatrix B = P.A.div_basis();
  if (B.cols() > 0) prob.lin.push_back({B, B});
  return subgroup_from_cosets(S, solve_conj(S, prob));
}

PSub center(const PToralGroup& S, const PSub& P) { return sub::intersect(S, P, centralizer(S, P)); }

std::vector<ConjCoset> transporter(const PToralGroup& S, const PSub& P, const PSub& Q) {
  ConjProblem prob;
  prob.into.push_back({P, Q});
  return solve_conj(S, prob);
}

std::optional<Elt> conjugator(const PToralGroup& S, const PSub& P, const PSub& Q) {
  if (P.order() != Q.order()) return std::nullopt;
  ConjProblem prob;
  prob.into.push_back({P, Q});
  return find_conjugator(S, prob);
}

}  // namespace fk
