#include <algorithm>
#include <random>

#include "json.hpp"

#include "fk/simpl.hpp"

namespace fk {

namespace {

std::string at(int n, int x) { return " at level " + std::to_string(n) + " simplex " + std::to_string(x); }

void check_size(long n) {
  if (n > bounds().max_simplices)
    throw BoundExceeded("simplicial level has " + std::to_string(n) + " simplices, above max_simplices");
}

}  // namespace

void SimplicialSet::allocate(std::vector<int> sizes) {
  N = int(sizes.size()) - 1;
  size = std::move(sizes);
  d.assign(N + 1, {});
  s.assign(N + 1, {});
  for (int n = 1; n <= N; ++n) d[n].assign(n + 1, std::vector<int>(size[n], -1));
  for (int n = 0; n < N; ++n) s[n].assign(n + 1, std::vector<int>(size[n], -1));
}

std::optional<std::string> SimplicialSet::check_identities() const {
  for (int n = 1; n <= N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < size[n]; ++x)
        if (d[n][i][x] < 0 || d[n][i][x] >= size[n - 1]) return "d" + std::to_string(i) + " out of range" + at(n, x);
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < size[n]; ++x)
        if (s[n][i][x] < 0 || s[n][i][x] >= size[n + 1]) return "s" + std::to_string(i) + " out of range" + at(n, x);
  // d_i d_j = d_(j-1) d_i for i < j.
  for (int n = 2; n <= N; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (int x = 0; x < size[n]; ++x)
          if (d[n - 1][i][d[n][j][x]] != d[n - 1][j - 1][d[n][i][x]])
            return "d" + std::to_string(i) + " d" + std::to_string(j) + " != d" + std::to_string(j - 1) + " d" +
                   std::to_string(i) + at(n, x);
  // d_i s_j.
  for (int n = 0; n < N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i)
        for (int x = 0; x < size[n]; ++x) {
          int lhs = d[n + 1][i][s[n][j][x]];
          int rhs;
          if (i == j || i == j + 1) rhs = x;
          else if (i < j) rhs = s[n - 1][j - 1][d[n][i][x]];
          else rhs = s[n - 1][j][d[n][i - 1][x]];
          if (lhs != rhs) return "d" + std::to_string(i) + " s" + std::to_string(j) + " identity fails" + at(n, x);
        }
  // s_i s_j = s_(j+1) s_i for i <= j.
  for (int n = 0; n + 1 < N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        for (int x = 0; x < size[n]; ++x)
          if (s[n + 1][i][s[n][j][x]] != s[n + 1][j + 1][s[n][i][x]])
            return "s" + std::to_string(i) + " s" + std::to_string(j) + " identity fails" + at(n, x);
  return std::nullopt;
}

std::string SimplicialSet::to_json() const {
  nlohmann::ordered_json j;
  j["truncation"] = N;
  j["sizes"] = size;
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (int n = 0; n <= N; ++n) {
    nlohmann::ordered_json l;
    l["level"] = n;
    l["faces"] = n > 0 ? nlohmann::ordered_json(d[n]) : nlohmann::ordered_json::array();
    l["degeneracies"] = n < N ? nlohmann::ordered_json(s[n]) : nlohmann::ordered_json::array();
    levels.push_back(l);
  }
  j["levels"] = levels;
  return j.dump();
}

std::optional<std::string> check_simplicial_map(const SimplicialSet& X, const SimplicialSet& Y,
                                                const std::vector<std::vector<int>>& f) {
  int N = std::min(X.N, Y.N);
  for (int n = 1; n <= N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < X.size[n]; ++x)
        if (f[n - 1][X.d[n][i][x]] != Y.d[n][i][f[n][x]])
          return "map does not commute with d" + std::to_string(i) + at(n, x);
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < X.size[n]; ++x)
        if (f[n + 1][X.s[n][i][x]] != Y.s[n][i][f[n][x]])
          return "map does not commute with s" + std::to_string(i) + at(n, x);
  return std::nullopt;
}

std::vector<int> Nerve::chain(int n, int x) const {
  if (n == 0) return {chains[0][x]};
  return std::vector<int>(chains[n].begin() + std::size_t(x) * n, chains[n].begin() + std::size_t(x + 1) * n);
}

int Nerve::id_of(const std::vector<int>& fs) const {
  int id = start[1][target[fs[0]]] + pos[fs[0]];
  for (std::size_t j = 1; j < fs.size(); ++j) id = start[j + 1][id] + pos[fs[j]];
  return id;
}

FiniteCategory group_category(const FiniteGroup& G) {
  int n = G.order();
  std::vector<int> zero(n, 0);
  std::vector<std::string> labels;
  for (int g = 0; g < n; ++g) labels.push_back(G.label(g));
  return FiniteCategory::build({"*"}, zero, zero, {0}, [&](int g, int h) { return G.mul(g, h); }, labels);
}

Nerve nerve(const FiniteCategory& C, int N) {
  if (N < 0) throw InputError("negative truncation");
  Nerve R;
  int m = C.num_morphisms();
  R.pos.assign(m, -1);
  R.target.assign(m, -1);
  for (int f = 0; f < m; ++f) R.target[f] = C.dst(f);
  for (int a = 0; a < C.num_objects(); ++a)
    for (int i = 0; i < int(C.into(a).size()); ++i) R.pos[C.into(a)[i]] = i;
  // Level n simplices, grouped by their (n-1)-prefix; the last morphism runs over into(c_(n-1)).
  std::vector<int> sizes{C.num_objects()};
  R.chains.assign(N + 1, {});
  R.start.assign(N + 1, {});
  R.chains[0].resize(C.num_objects());
  for (int a = 0; a < C.num_objects(); ++a) R.chains[0][a] = a;
  // last[x]: the vertex c_n of simplex x.
  std::vector<int> last = R.chains[0];
  for (int n = 1; n <= N; ++n) {
    std::vector<int> nlast;
    R.start[n].resize(sizes[n - 1]);
    long count = 0;
    for (int y = 0; y < sizes[n - 1]; ++y) {
      R.start[n][y] = int(count);
      count += long(C.into(last[y]).size());
    }
    check_size(count);
    R.chains[n].resize(std::size_t(count) * n);
    nlast.resize(count);
    for (int y = 0; y < sizes[n - 1]; ++y) {
      const auto& in = C.into(last[y]);
      for (int i = 0; i < int(in.size()); ++i) {
        int x = R.start[n][y] + i;
        for (int j = 0; j + 1 < n; ++j) R.chains[n][std::size_t(x) * n + j] = R.chains[n - 1][std::size_t(y) * (n - 1) + j];
        R.chains[n][std::size_t(x) * n + n - 1] = in[i];
        nlast[x] = C.src(in[i]);
      }
    }
    sizes.push_back(int(count));
    last = std::move(nlast);
  }
  R.X.allocate(sizes);
  for (int n = 1; n <= N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      std::vector<int> f = R.chain(n, x);
      if (n == 1) {
        R.X.d[1][0][x] = C.src(f[0]);
        R.X.d[1][1][x] = C.dst(f[0]);
        continue;
      }
      for (int i = 0; i <= n; ++i) {
        std::vector<int> g;
        for (int j = 0; j < n; ++j) {
          if (i == 0 && j == 0) continue;
          if (i == n && j == n - 1) continue;
          if (i > 0 && i < n && j == i - 1) {
            g.push_back(C.compose(f[i - 1], f[i]));
            ++j;
            continue;
          }
          g.push_back(f[j]);
        }
        R.X.d[n][i][x] = R.id_of(g);
      }
    }
  for (int n = 0; n < N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      if (n == 0) {
        R.X.s[0][0][x] = R.id_of({C.identity(x)});
        continue;
      }
      std::vector<int> f = R.chain(n, x);
      for (int i = 0; i <= n; ++i) {
        int c = i == 0 ? C.dst(f[0]) : C.src(f[i - 1]);
        std::vector<int> g(f.begin(), f.begin() + i);
        g.push_back(C.identity(c));
        g.insert(g.end(), f.begin() + i, f.end());
        R.X.s[n][i][x] = R.id_of(g);
      }
    }
  return R;
}

std::optional<std::string> SimplicialGroup::check_group(int exhaustive, int samples, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const SimplicialSet& S = X;
  auto hom = [&](int n, int a, int b) -> std::optional<std::string> {
    int ab = mul(n, a, b);
    if (ab < 0 || ab >= S.size[n]) return "product out of range" + at(n, a);
    if (n > 0)
      for (int i = 0; i <= n; ++i)
        if (S.d[n][i][ab] != mul(n - 1, S.d[n][i][a], S.d[n][i][b]))
          return "d" + std::to_string(i) + " is not a homomorphism" + at(n, a);
    if (n < S.N)
      for (int i = 0; i <= n; ++i)
        if (S.s[n][i][ab] != mul(n + 1, S.s[n][i][a], S.s[n][i][b]))
          return "s" + std::to_string(i) + " is not a homomorphism" + at(n, a);
    return std::nullopt;
  };
  for (int n = 0; n <= S.N; ++n) {
    int sz = S.size[n];
    if (n > 0)
      for (int i = 0; i <= n; ++i)
        if (S.d[n][i][one[n]] != one[n - 1]) return "face of the identity is not the identity" + at(n, one[n]);
    for (int a = 0; a < sz; ++a) {
      if (mul(n, a, one[n]) != a || mul(n, one[n], a) != a) return "identity law fails" + at(n, a);
      int ia = inv(n, a);
      if (mul(n, a, ia) != one[n] || mul(n, ia, a) != one[n]) return "inverse law fails" + at(n, a);
    }
    std::uniform_int_distribution<int> pick(0, sz - 1);
    if (long(sz) * sz <= exhaustive) {
      for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b)
          if (auto e = hom(n, a, b)) return e;
    } else {
      for (int k = 0; k < samples; ++k)
        if (auto e = hom(n, pick(rng), pick(rng))) return e;
    }
    for (int k = 0; k < samples; ++k) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul(n, mul(n, a, b), c) != mul(n, a, mul(n, b, c))) return "associativity fails" + at(n, a);
    }
  }
  return std::nullopt;
}

SimplicialGroup constant_group(const FiniteGroup& G, int N) {
  SimplicialGroup K;
  K.X.allocate(std::vector<int>(N + 1, G.order()));
  for (int n = 1; n <= N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < G.order(); ++x) K.X.d[n][i][x] = x;
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < G.order(); ++x) K.X.s[n][i][x] = x;
  K.mul = [G](int, int a, int b) { return G.mul(a, b); };
  K.inv = [G](int, int a) { return G.inv(a); };
  K.one.assign(N + 1, 0);
  return K;
}

WTuple wbar_face(const SimplicialGroup& K, int n, int i, const WTuple& w) {
  // w[j] = k_(n-1-j); result r[j] = k'_(n-2-j).
  const SimplicialSet& X = K.X;
  auto k = [&](int l) { return w[n - 1 - l]; };
  WTuple r(n - 1);
  if (i == 0) {
    std::copy(w.begin() + 1, w.end(), r.begin());
    return r;
  }
  for (int l = n - 2; l >= 0; --l) {
    int v;
    if (l >= n - i) v = X.d[l + 1][i - (n - 1 - l)][k(l + 1)];
    else if (l == n - i - 1) v = K.mul(l, X.d[l + 1][0][k(l + 1)], k(l));
    else v = k(l);
    r[n - 2 - l] = v;
  }
  return r;
}

WTuple wbar_degen(const SimplicialGroup& K, int n, int i, const WTuple& w) {
  const SimplicialSet& X = K.X;
  auto k = [&](int l) { return w[n - 1 - l]; };
  WTuple r(n + 1);
  for (int l = n; l >= 0; --l) {
    int v;
    if (l > n - i) v = X.s[l - 1][i - 1 - (n - l)][k(l - 1)];
    else if (l == n - i) v = K.one[l];
    else v = k(l);
    r[n - l] = v;
  }
  return r;
}

int wbar_encode(const SimplicialGroup& K, int n, const WTuple& w) {
  long id = 0;
  for (int j = 0; j < n; ++j) id = id * K.X.size[n - 1 - j] + w[j];
  return int(id);
}

WTuple wbar_decode(const SimplicialGroup& K, int n, int x) {
  WTuple w(n);
  for (int j = n - 1; j >= 0; --j) {
    int b = K.X.size[n - 1 - j];
    w[j] = x % b;
    x /= b;
  }
  return w;
}

SimplicialSet wbar(const SimplicialGroup& K, int N) {
  if (N > K.X.N + 1) throw InputError("W-bar truncation needs the group up to level N - 1");
  std::vector<int> sizes{1};
  for (int n = 1; n <= N; ++n) {
    long sz = 1;
    for (int l = 0; l < n; ++l) {
      sz *= K.X.size[l];
      check_size(sz);
    }
    sizes.push_back(int(sz));
  }
  SimplicialSet W;
  W.allocate(sizes);
  for (int n = 1; n <= N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      WTuple w = wbar_decode(K, n, x);
      for (int i = 0; i <= n; ++i) W.d[n][i][x] = wbar_encode(K, n - 1, wbar_face(K, n, i, w));
    }
  for (int n = 0; n < N; ++n)
    for (int x = 0; x < sizes[n]; ++x) {
      WTuple w = wbar_decode(K, n, x);
      for (int i = 0; i <= n; ++i) W.s[n][i][x] = wbar_encode(K, n + 1, wbar_degen(K, n, i, w));
    }
  return W;
}

namespace {

// d_2 applied n - 1 times: X_n -> X_1.
int first_edge(const SimplicialSet& X, int n, int x) {
  for (int m = n; m > 1; --m) x = X.d[m][2][x];
  return x;
}

// Edge between vertices i and i + 1.
int edge(const SimplicialSet& X, int n, int i, int x) {
  for (int m = n; m > i + 1; --m) x = X.d[m][m][x];
  for (int m = i + 1; m > 1; --m) x = X.d[m][0][x];
  return x;
}

}  // namespace

FiniteCategory category_from_simplicial(const SimplicialSet& X) {
  if (X.N < 2) throw InputError("need a truncation of at least 2 to read off composition");
  int m = X.size[1];
  std::vector<long> with_source(X.size[0], 0);
  for (int f = 0; f < m; ++f) ++with_source[X.d[1][0][f]];
  std::vector<int> comp(std::size_t(m) * m, -1);
  for (int n = 2; n <= X.N; ++n) {
    // D_n(x) = (d_2^(n-1) x, d_0 x); target pairs (f, y) with d_0 f = d_1^(n-1) y.
    long target = 0;
    std::vector<int> d1n(X.size[n - 1]);
    for (int y = 0; y < X.size[n - 1]; ++y) {
      int v = y;
      for (int k = n - 1; k >= 1; --k) v = X.d[k][1][v];
      d1n[y] = v;
    }
    for (int y = 0; y < X.size[n - 1]; ++y) target += with_source[d1n[y]];
    std::vector<char> seen(std::size_t(m) * X.size[n - 1], 0);
    for (int x = 0; x < X.size[n]; ++x) {
      int f = first_edge(X, n, x), y = X.d[n][0][x];
      if (X.d[1][0][f] != d1n[y])
        throw InputError("D_" + std::to_string(n) + " lands outside composable pairs" + at(n, x));
      char& c = seen[std::size_t(f) * X.size[n - 1] + y];
      if (c) throw InputError("D_" + std::to_string(n) + " is not injective" + at(n, x));
      c = 1;
      if (n == 2) comp[std::size_t(f) * m + y] = X.d[2][1][x];
    }
    if (long(X.size[n]) != target) throw InputError("D_" + std::to_string(n) + " is not surjective");
  }
  std::vector<std::string> objects;
  for (int v = 0; v < X.size[0]; ++v) objects.push_back("x" + std::to_string(v));
  std::vector<int> src(m), dst(m), ident(X.size[0]);
  for (int f = 0; f < m; ++f) {
    src[f] = X.d[1][0][f];
    dst[f] = X.d[1][1][f];
  }
  for (int v = 0; v < X.size[0]; ++v) ident[v] = X.s[0][0][v];
  FiniteCategory C = FiniteCategory::build(objects, src, dst, ident,
                                           [&](int g, int f) { return comp[std::size_t(g) * m + f]; });
  if (auto e = C.check_laws()) throw InputError("recovered composition is not a category: " + *e);
  return C;
}

std::vector<std::vector<int>> edge_map(const SimplicialSet& X, const Nerve& NC, const std::vector<int>& on_vertices,
                                       const std::vector<int>& on_edges) {
  int N = std::min(X.N, NC.X.N);
  std::vector<std::vector<int>> f(N + 1);
  for (int n = 0; n <= N; ++n) {
    if (X.size[n] != NC.X.size[n])
      throw StructureError("level " + std::to_string(n) + " sizes differ: " + std::to_string(X.size[n]) + " vs " +
                           std::to_string(NC.X.size[n]));
    f[n].resize(X.size[n]);
    std::vector<char> hit(X.size[n], 0);
    for (int x = 0; x < X.size[n]; ++x) {
      int y;
      if (n == 0) {
        y = on_vertices[x];
      } else {
        std::vector<int> fs(n);
        for (int i = 0; i < n; ++i) fs[i] = on_edges[edge(X, n, i, x)];
        y = NC.id_of(fs);
        if (NC.chain(n, y) != fs) throw StructureError("edges of a simplex are not composable" + at(n, x));
      }
      if (hit[y]) throw StructureError("edge map is not injective" + at(n, x));
      hit[y] = 1;
      f[n][x] = y;
    }
  }
  return f;
}

}  // namespace fk
