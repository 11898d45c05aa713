#include <algorithm>
#include <memory>
#include <random>

#include "fk/simpl.hpp"

namespace fk {

namespace {

void check_size(long n) {
  if (n > bounds().max_simplices)
    throw BoundExceeded("simplicial level has " + std::to_string(n) + " simplices, above max_simplices");
}

long int_pow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// [g1|..|gn] from the mixed-radix id of an n-simplex of N B(G).
std::vector<int> bar_digits(int order, int n, int x) {
  std::vector<int> g(n);
  for (int j = n - 1; j >= 0; --j) {
    g[j] = x % order;
    x /= order;
  }
  return g;
}

int bar_id(int order, const std::vector<int>& g) {
  long id = 0;
  for (int x : g) id = id * order + x;
  return int(id);
}

std::string bar_label(const FiniteGroup& G, int n, int x) {
  std::string s = "[";
  std::vector<int> g = bar_digits(G.order(), n, x);
  for (int j = 0; j < n; ++j) s += (j ? "|" : "") + G.label(g[j]);
  return s + "]";
}

}  // namespace

std::vector<int> AutTyp::decode(int n, int x) const {
  std::vector<int> v(n + 1);
  for (int j = n; j >= 1; --j) {
    v[j] = x % num_aut_S;
    x /= num_aut_S;
  }
  v[0] = x;
  return v;
}

int AutTyp::encode(const std::vector<int>& v) const {
  long id = v[0];
  for (std::size_t j = 1; j < v.size(); ++j) id = id * num_aut_S + v[j];
  return int(id);
}

std::vector<int> AutTyp::objects(int n, int x) const {
  std::vector<int> v = decode(n, x), a(n + 1);
  a[0] = v[0];
  // alpha_(i-1) = c_chi_i alpha_i.
  for (int i = 1; i <= n; ++i) a[i] = a_mul[a_inv[conj[v[i]]] * num_autos + a[i - 1]];
  return a;
}

std::vector<int> AutTyp::morphisms(int alpha, int beta) const {
  std::vector<int> out;
  for (int k = 0; k < num_aut_S; ++k)
    if (a_mul[conj[k] * num_autos + alpha] == beta) out.push_back(k);
  return out;
}

int AutTyp::components() const {
  std::vector<int> comp(num_autos, -1);
  int c = 0;
  for (int a = 0; a < num_autos; ++a) {
    if (comp[a] >= 0) continue;
    for (int k = 0; k < num_aut_S; ++k) comp[a_mul[conj[k] * num_autos + a]] = c;
    ++c;
  }
  return c;
}

AutTyp aut_typ(const TransporterSystem& L, const IsotypicalAutos& A, int N) {
  const FiniteCategory& C = L.cat;
  AutTyp R;
  R.autos = A.autos;
  int na = R.num_autos = int(A.autos.size());
  int nk = R.num_aut_S = int(A.aut_S.size());
  std::vector<int> kof(C.num_morphisms(), -1);
  for (int k = 0; k < nk; ++k) kof[A.aut_S[k]] = k;
  R.k_one = kof[C.identity(L.sylow_object())];
  R.k_mul.resize(std::size_t(nk) * nk);
  R.k_inv.resize(nk);
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) {
      int c = kof[C.compose(A.aut_S[a], A.aut_S[b])];
      R.k_mul[std::size_t(a) * nk + b] = c;
      if (c == R.k_one) R.k_inv[a] = b;
    }
  R.a_mul.resize(std::size_t(na) * na);
  R.a_inv.resize(na);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int c = A.index_of(compose_autos(A.autos[a], A.autos[b]));
      if (c < 0) throw StructureError("isotypical automorphisms are not closed under composition");
      R.a_mul[std::size_t(a) * na + b] = c;
      if (c == 0) R.a_inv[a] = b;
    }
  R.a_on_k.resize(std::size_t(na) * nk);
  for (int a = 0; a < na; ++a)
    for (int k = 0; k < nk; ++k) {
      int img = kof[A.autos[a].mor[A.aut_S[k]]];
      if (img < 0) throw StructureError("an isotypical automorphism moves Aut_L(S) off itself");
      R.a_on_k[std::size_t(a) * nk + k] = img;
    }
  R.conj = A.conj;
  R.restr.assign(nk, std::vector<int>(L.num_objects(), -1));
  for (int k = 0; k < nk; ++k)
    for (int P = 0; P < L.num_objects(); ++P)
      R.restr[k][P] = restrict_morphism(L, A.aut_S[k], P, A.autos[A.conj[k]].obj[P]);

  // The group operations only need the tables above.
  auto core = std::make_shared<const AutTyp>(R);

  std::vector<int> sizes;
  for (int n = 0; n <= N; ++n) {
    long sz = long(na) * int_pow(nk, n);
    check_size(sz);
    sizes.push_back(int(sz));
  }
  SimplicialSet& X = R.K.X;
  X.allocate(sizes);
  for (int n = 1; n <= N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      std::vector<int> v = R.decode(n, x);
      std::vector<int> a = R.objects(n, x);
      for (int i = 0; i <= n; ++i) {
        std::vector<int> w;
        if (i == 0) {
          w.push_back(a[1]);
          w.insert(w.end(), v.begin() + 2, v.end());
        } else if (i == n) {
          w.assign(v.begin(), v.end() - 1);
        } else {
          w.assign(v.begin(), v.begin() + i);
          w.push_back(R.k_mul[std::size_t(v[i]) * nk + v[i + 1]]);
          w.insert(w.end(), v.begin() + i + 2, v.end());
        }
        X.d[n][i][x] = R.encode(w);
      }
    }
  for (int n = 0; n < N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      std::vector<int> v = R.decode(n, x);
      for (int i = 0; i <= n; ++i) {
        std::vector<int> w(v.begin(), v.begin() + i + 1);
        w.push_back(R.k_one);
        w.insert(w.end(), v.begin() + i + 1, v.end());
        X.s[n][i][x] = R.encode(w);
      }
    }
  for (int n = 0; n <= N; ++n) {
    std::vector<int> v(n + 1, R.k_one);
    v[0] = 0;
    R.K.one.push_back(R.encode(v));
  }
  R.K.mul = [core](int n, int x, int y) {
    const AutTyp& T = *core;
    std::vector<int> u = T.decode(n, x), v = T.decode(n, y), a = T.objects(n, x);
    std::vector<int> w(n + 1);
    w[0] = T.a_mul[std::size_t(u[0]) * T.num_autos + v[0]];
    for (int i = 1; i <= n; ++i)
      w[i] = T.k_mul[std::size_t(T.a_on_k[std::size_t(a[i - 1]) * T.num_aut_S + v[i]]) * T.num_aut_S + u[i]];
    return T.encode(w);
  };
  R.K.inv = [core](int n, int x) {
    const AutTyp& T = *core;
    std::vector<int> u = T.decode(n, x), a = T.objects(n, x);
    std::vector<int> w(n + 1);
    w[0] = T.a_inv[u[0]];
    for (int i = 1; i <= n; ++i) w[i] = T.a_on_k[std::size_t(T.a_inv[a[i - 1]]) * T.num_aut_S + T.k_inv[u[i]]];
    return T.encode(w);
  };
  return R;
}

int act(const AutTyp& K, const TransporterSystem& L, const Nerve& NL, int n, int kappa, int xi) {
  std::vector<int> a = K.objects(n, kappa);
  if (n == 0) return K.autos[a[0]].obj[xi];
  std::vector<int> v = K.decode(n, kappa), fs = NL.chain(n, xi), out(n);
  for (int i = 1; i <= n; ++i) {
    int f = fs[i - 1];
    int P = L.cat.src(f);
    int chiP = K.restr[v[i]][K.autos[a[i]].obj[P]];
    out[i - 1] = L.cat.compose(K.autos[a[i - 1]].mor[f], chiP);
  }
  return NL.id_of(out);
}

std::optional<std::string> check_action(const AutTyp& K, const TransporterSystem& L, const Nerve& NL,
                                        long exhaustive, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SimplicialSet& X = K.K.X;
  const SimplicialSet& Y = NL.X;
  int N = std::min(X.N, Y.N);
  auto where = [](int n, int k, int x) {
    return " at level " + std::to_string(n) + " (" + std::to_string(k) + ", " + std::to_string(x) + ")";
  };
  auto pair = [&](int n, int k, int x) -> std::optional<std::string> {
    int y = act(K, L, NL, n, k, x);
    if (n > 0)
      for (int i = 0; i <= n; ++i)
        if (Y.d[n][i][y] != act(K, L, NL, n - 1, X.d[n][i][k], Y.d[n][i][x]))
          return "action does not commute with d" + std::to_string(i) + where(n, k, x);
    if (n < N)
      for (int i = 0; i <= n; ++i)
        if (Y.s[n][i][y] != act(K, L, NL, n + 1, X.s[n][i][k], Y.s[n][i][x]))
          return "action does not commute with s" + std::to_string(i) + where(n, k, x);
    return std::nullopt;
  };
  for (int n = 0; n <= N; ++n) {
    for (int x = 0; x < Y.size[n]; ++x)
      if (act(K, L, NL, n, K.K.one[n], x) != x) return "identity acts nontrivially" + where(n, K.K.one[n], x);
    std::uniform_int_distribution<int> pk(0, X.size[n] - 1), px(0, Y.size[n] - 1);
    if (long(X.size[n]) * Y.size[n] <= exhaustive) {
      for (int k = 0; k < X.size[n]; ++k)
        for (int x = 0; x < Y.size[n]; ++x)
          if (auto e = pair(n, k, x)) return e;
    } else {
      for (int s = 0; s < samples; ++s)
        if (auto e = pair(n, pk(rng), px(rng))) return e;
    }
    for (int s = 0; s < samples; ++s) {
      int k1 = pk(rng), k2 = pk(rng), x = px(rng);
      if (act(K, L, NL, n, K.K.mul(n, k1, k2), x) != act(K, L, NL, n, k1, act(K, L, NL, n, k2, x)))
        return "action is not associative" + where(n, k1, x);
    }
  }
  return std::nullopt;
}

bool TwistingReport::failed(int relation) const {
  return std::binary_search(failed_relations.begin(), failed_relations.end(), relation);
}

TwistingReport check_twisting(const TwistingFunction& phi, const SimplicialGroup& K) {
  TwistingReport R;
  const FiniteGroup& G = phi.G;
  int N = phi.N;
  if (K.X.N < N - 1) throw InputError("simplicial group is truncated below the twisting function");
  Nerve NB = nerve(group_category(G), N);
  const SimplicialSet& B = NB.X;
  const SimplicialSet& X = K.X;
  auto fail = [&](int rel, int n, int g) {
    if (R.failures.size() < 64) R.failures.push_back("relation " + std::to_string(rel) + " at " + bar_label(G, n, g));
    if (!R.failed(rel)) {
      R.failed_relations.push_back(rel);
      std::sort(R.failed_relations.begin(), R.failed_relations.end());
    }
  };
  // n = 0: phi_1(s_0 *) = 1.
  if (N >= 1 && phi.phi[1][B.s[0][0][0]] != K.one[0]) fail(4, 0, 0);
  for (int n = 1; n <= N; ++n)
    for (int g = 0; g < B.size[n]; ++g) {
      int v = phi.phi[n][g];
      if (n >= 2) {
        for (int i = 2; i <= n; ++i)
          if (phi.phi[n - 1][B.d[n][i][g]] != X.d[n - 1][i - 1][v]) fail(1, n, g);
        if (phi.phi[n - 1][B.d[n][1][g]] != K.mul(n - 2, X.d[n - 1][0][v], phi.phi[n - 1][B.d[n][0][g]]))
          fail(2, n, g);
      }
      if (n + 1 <= N) {
        for (int i = 1; i <= n; ++i)
          if (phi.phi[n + 1][B.s[n][i][g]] != X.s[n - 1][i - 1][v]) fail(3, n, g);
        if (phi.phi[n + 1][B.s[n][0][g]] != K.one[n]) fail(4, n, g);
      }
    }
  // g -> (phi_n(g), phi_(n-1)(d_0 g), ...) into W-bar.
  auto lift = [&](int n, int g) {
    WTuple w(n);
    for (int j = 0; j < n; ++j) {
      w[j] = phi.phi[n - j][g];
      g = B.d[n - j][0][g];
    }
    return w;
  };
  for (int n = 1; n <= N && R.map_witness.empty(); ++n)
    for (int g = 0; g < B.size[n] && R.map_witness.empty(); ++g) {
      WTuple w = lift(n, g);
      for (int i = 0; i <= n; ++i)
        if (wbar_face(K, n, i, w) != lift(n - 1, B.d[n][i][g])) {
          R.map_witness = "d" + std::to_string(i) + " at " + bar_label(G, n, g);
          break;
        }
    }
  for (int n = 0; n < N && R.map_witness.empty(); ++n)
    for (int g = 0; g < B.size[n] && R.map_witness.empty(); ++g) {
      WTuple w = lift(n, g);
      for (int i = 0; i <= n; ++i)
        if (wbar_degen(K, n, i, w) != lift(n + 1, B.s[n][i][g])) {
          R.map_witness = "s" + std::to_string(i) + " at " + bar_label(G, n, g);
          break;
        }
    }
  return R;
}

TwistingFunction trivial_twisting(const FiniteGroup& G, const SimplicialGroup& K, int N) {
  TwistingFunction T;
  T.N = N;
  T.G = G;
  T.phi.assign(N + 1, {});
  for (int n = 1; n <= N; ++n) T.phi[n].assign(int_pow(G.order(), n), K.one[n - 1]);
  return T;
}

namespace {

struct Cocycle {
  std::vector<int> t;    // autos index
  std::vector<int> chi;  // aut_S index at g * |G| + h
};

Cocycle cocycle_of(const ExtensionPair& U) {
  const FiniteGroup& G = U.G;
  const FiniteGroup& H = U.hat;
  int o = G.order();
  std::vector<int> tU = U.section(), gidx = U.gamma_index();
  Cocycle c;
  c.t.resize(o);
  c.chi.resize(std::size_t(o) * o);
  for (int g = 0; g < o; ++g) c.t[g] = U.tau[tU[g]];
  for (int g = 0; g < o; ++g)
    for (int h = 0; h < o; ++h) {
      int k = gidx[H.mul(H.mul(tU[g], tU[h]), H.inv(tU[G.mul(g, h)]))];
      if (k < 0) throw StructureError("t_U(g) t_U(h) t_U(gh)^-1 is not in Gamma");
      c.chi[std::size_t(g) * o + h] = k;
    }
  return c;
}

}  // namespace

std::optional<std::string> check_cocycle(const ExtensionPair& U) {
  Cocycle c = cocycle_of(U);
  const FiniteGroup& G = U.G;
  const FiniteCategory& C = U.L.cat;
  const auto& A = U.autos;
  int o = G.order();
  auto chi = [&](int g, int h) { return A.aut_S[c.chi[std::size_t(g) * o + h]]; };
  for (int g = 0; g < o; ++g) {
    if (c.chi[std::size_t(g) * o] != c.chi[0] || c.chi[g] != c.chi[0])
      return "chi(1, g) or chi(g, 1) is not 1 at " + G.label(g);
    for (int h = 0; h < o; ++h)
      for (int k = 0; k < o; ++k) {
        int lhs = C.compose(chi(g, h), chi(G.mul(g, h), k));
        int rhs = C.compose(A.autos[c.t[g]].mor[chi(h, k)], chi(g, G.mul(h, k)));
        if (lhs != rhs) return "cocycle identity fails at (" + G.label(g) + ", " + G.label(h) + ", " + G.label(k) + ")";
      }
  }
  return std::nullopt;
}

TwistingFunction twisting_from_pair(const ExtensionPair& U, const AutTyp& K, int N) {
  if (K.K.X.N < N - 1) throw InputError("simplicial group is truncated below N - 1");
  Cocycle c = cocycle_of(U);
  const FiniteGroup& G = U.G;
  int o = G.order();
  auto chi = [&](int g, int h) { return c.chi[std::size_t(g) * o + h]; };
  auto tdiv = [&](int x, int y) { return K.a_mul[std::size_t(c.t[x]) * K.num_autos + K.a_inv[c.t[y]]]; };
  TwistingFunction T;
  T.N = N;
  T.G = G;
  T.phi.assign(N + 1, {});
  for (int n = 1; n <= N; ++n) {
    long sz = int_pow(o, n);
    check_size(sz);
    T.phi[n].resize(sz);
    for (int x = 0; x < sz; ++x) {
      std::vector<int> g = bar_digits(o, n, x);
      // p[m] = g2..gm and q[m] = g1..gm, 1-based m; p[1] = 1.
      std::vector<int> p(n + 1, 0), q(n + 1, 0);
      q[1] = g[0];
      for (int m = 2; m <= n; ++m) {
        p[m] = G.mul(p[m - 1], g[m - 1]);
        q[m] = G.mul(q[m - 1], g[m - 1]);
      }
      std::vector<int> v(n);
      v[0] = c.t[g[0]];
      for (int m = 1; m < n; ++m) v[m] = K.k_mul[std::size_t(K.k_inv[chi(g[0], p[m])]) * K.num_aut_S + chi(g[0], p[m + 1])];
      int id = K.encode(v);
      std::vector<int> objs = K.objects(n - 1, id);
      for (int m = 1; m <= n; ++m)
        if (objs[m - 1] != tdiv(q[m], p[m]))
          throw StructureError("twisting chain has the wrong objects at " + bar_label(G, n, x));
      T.phi[n][x] = id;
    }
  }
  return T;
}

ExtensionPair pair_from_cocycle(const TransporterSystem& L, const IsotypicalAutos& A, const AutTyp& K,
                                const FiniteGroup& G, const std::vector<int>& t, const std::vector<int>& chi) {
  int o = G.order(), nk = K.num_aut_S;
  // Identity of Aut_L(S) first so that (1, 1) is element 0.
  std::vector<int> order{K.k_one}, rank(nk);
  for (int k = 0; k < nk; ++k)
    if (k != K.k_one) order.push_back(k);
  for (int r = 0; r < nk; ++r) rank[order[r]] = r;
  int n = nk * o;
  if (n > bounds().max_group_order) throw BoundExceeded("extension group is larger than max_group_order");
  std::vector<int> table(std::size_t(n) * n);
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    int a = order[x / o], g = x % o;
    labels.push_back("(" + L.cat.label(A.aut_S[a]) + "," + G.label(g) + ")");
    for (int y = 0; y < n; ++y) {
      int b = order[y / o], h = y % o;
      int ab = K.k_mul[std::size_t(a) * nk + K.a_on_k[std::size_t(t[g]) * nk + b]];
      ab = K.k_mul[std::size_t(ab) * nk + chi[std::size_t(g) * o + h]];
      table[std::size_t(x) * n + y] = rank[ab] * o + G.mul(g, h);
    }
  }
  ExtensionPair U;
  U.L = L;
  U.autos = A;
  U.hat = FiniteGroup::from_table(std::move(table), n, labels);
  if (!U.hat.verify_table()) throw StructureError("product on Aut_L(S) x G is not a group: chi is not a cocycle");
  U.G = G;
  U.gamma.resize(nk);
  for (int k = 0; k < nk; ++k) U.gamma[k] = rank[k] * o;
  U.rho.resize(n);
  U.tau.resize(n);
  for (int x = 0; x < n; ++x) {
    U.rho[x] = x % o;
    U.tau[x] = K.a_mul[std::size_t(K.conj[order[x / o]]) * K.num_autos + t[x % o]];
  }
  U.t_U.resize(o);
  for (int g = 0; g < o; ++g) U.t_U[g] = g;
  return validate_extension_pair(std::move(U));
}

ExtensionPair pair_from_twisting(const TransporterSystem& L, const IsotypicalAutos& A, const AutTyp& K,
                                 const TwistingFunction& phi) {
  if (phi.N < 2) throw InputError("need phi_1 and phi_2");
  int o = phi.G.order();
  std::vector<int> t(o), chi(std::size_t(o) * o);
  for (int g = 0; g < o; ++g) t[g] = phi.phi[1][g];
  for (int x = 0; x < o * o; ++x) chi[x] = K.decode(1, phi.phi[2][x])[1];
  return pair_from_cocycle(L, A, K, phi.G, t, chi);
}

std::vector<int> pair_roundtrip_iso(const ExtensionPair& U, const ExtensionPair& back) {
  int o = U.G.order();
  std::vector<int> row_k(back.gamma.size());
  for (int k = 0; k < int(back.gamma.size()); ++k) row_k[back.gamma[k] / o] = k;
  std::vector<int> tU = U.section(), theta(back.hat.order());
  for (int x = 0; x < back.hat.order(); ++x) theta[x] = U.hat.mul(U.gamma[row_k[x / o]], tU[back.rho[x]]);
  return theta;
}

TwistedProduct twisted_product(const TwistingFunction& phi, const AutTyp& K, const TransporterSystem& L,
                               const Nerve& NL) {
  int N = phi.N;
  if (NL.X.N < N) throw InputError("nerve of L is truncated below the twisting function");
  TwistedProduct E;
  E.NB = nerve(group_category(phi.G), N);
  int o = phi.G.order();
  std::vector<int> sizes;
  for (int n = 0; n <= N; ++n) {
    E.radix.push_back(int(int_pow(o, n)));
    long sz = long(NL.X.size[n]) * E.radix[n];
    check_size(sz);
    sizes.push_back(int(sz));
  }
  E.X.allocate(sizes);
  const SimplicialSet& Y = NL.X;
  const SimplicialSet& B = E.NB.X;
  for (int n = 1; n <= N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      int xi = x / E.radix[n], g = x % E.radix[n];
      int k = K.K.inv(n - 1, phi.phi[n][g]);
      E.X.d[n][0][x] = act(K, L, NL, n - 1, k, Y.d[n][0][xi]) * E.radix[n - 1] + B.d[n][0][g];
      for (int i = 1; i <= n; ++i) E.X.d[n][i][x] = Y.d[n][i][xi] * E.radix[n - 1] + B.d[n][i][g];
    }
  for (int n = 0; n < N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      int xi = x / E.radix[n], g = x % E.radix[n];
      for (int i = 0; i <= n; ++i) E.X.s[n][i][x] = Y.s[n][i][xi] * E.radix[n + 1] + B.s[n][i][g];
    }
  E.pr.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    E.pr[n].resize(sizes[n]);
    for (int x = 0; x < sizes[n]; ++x) E.pr[n][x] = x % E.radix[n];
  }
  return E;
}

NerveIsoReport lu_twisted_product_iso(const ExtensionPair& U, const AutTyp& K, int N) {
  NerveIsoReport R;
  TwistingFunction phi = twisting_from_pair(U, K, N);
  Nerve NL = nerve(U.L.cat, N);
  TwistedProduct E = twisted_product(phi, K, U.L, NL);
  LUCategory LU = build_LU(U);
  Nerve NLU = nerve(LU.cat, N);
  R.level_sizes = NLU.X.size;
  if (LU.cat.num_objects() != U.L.num_objects()) {
    R.witness = "L_U and L have different objects";
    return R;
  }
  int o = U.G.order();
  std::vector<int> on_vertices(U.L.num_objects()), on_edges(E.X.size[1]);
  for (int a = 0; a < U.L.num_objects(); ++a) on_vertices[a] = a;
  for (int x = 0; x < E.X.size[1]; ++x) on_edges[x] = LU.id_of(NL.chain(1, x / o)[0], x % o);
  std::vector<std::vector<int>> F;
  try {
    F = edge_map(E.X, NLU, on_vertices, on_edges);
  } catch (const StructureError& e) {
    R.witness = e.what();
    return R;
  }
  if (auto e = check_simplicial_map(E.X, NLU.X, F)) {
    R.witness = *e;
    return R;
  }
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < E.X.size[n]; ++x) {
      if (n == 0) continue;
      std::vector<int> fs = NLU.chain(n, F[n][x]), g(n);
      for (int i = 0; i < n; ++i) g[i] = LU.g[fs[i]];
      if (bar_id(o, g) != E.pr[n][x]) {
        R.witness = "projections differ at level " + std::to_string(n) + " simplex " + std::to_string(x);
        return R;
      }
    }
  R.iso.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    R.iso[n].assign(F[n].size(), -1);
    for (int x = 0; x < int(F[n].size()); ++x) R.iso[n][F[n][x]] = x;
  }
  R.ok = true;
  return R;
}

}  // namespace fk
