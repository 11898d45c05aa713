#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fk/extend.hpp"

namespace fk {

// Simplicial set truncated at level N, stored as face and degeneracy tables.
struct SimplicialSet {
  int N = 0;
  std::vector<int> size;                         // simplices per level 0..N
  std::vector<std::vector<std::vector<int>>> d;  // d[n][i][x] for 1 <= n <= N, 0 <= i <= n
  std::vector<std::vector<std::vector<int>>> s;  // s[n][i][x] for 0 <= n < N, 0 <= i <= n

  int face(int n, int i, int x) const { return d[n][i][x]; }
  int degen(int n, int i, int x) const { return s[n][i][x]; }
  void allocate(std::vector<int> sizes);
  // First failing simplicial identity, over every simplex of every level.
  std::optional<std::string> check_identities() const;
  std::string to_json() const;
};

// f[n]: X_n -> Y_n. First face or degeneracy the map fails to commute with.
std::optional<std::string> check_simplicial_map(const SimplicialSet& X, const SimplicialSet& Y,
                                                const std::vector<std::vector<int>>& f);

// Nerve with the opposite convention: an n-simplex is c0 <- c1 <- ... <- cn, written (f1, ..., fn)
// with f_i: c_i -> c_(i-1). d_0 drops f1, d_n drops fn, d_i composes f_i o f_(i+1), s_i inserts
// the identity of c_i. For a one-object category the id of (f1..fn) is sum f_i |Mor|^(n-i).
struct Nerve {
  SimplicialSet X;
  std::vector<std::vector<int>> chains;  // chains[n][x * n + j] = f_(j+1); chains[0][x] = object
  std::vector<std::vector<int>> start;   // start[n][y]: first id over the (n-1)-simplex y
  std::vector<int> pos;                  // index of f in into(dst f)
  std::vector<int> target;               // dst f

  std::vector<int> chain(int n, int x) const;
  int id_of(const std::vector<int>& fs) const;  // fs nonempty and composable
};
Nerve nerve(const FiniteCategory& C, int N);
// One object, morphisms the elements of G, g o h = gh.
FiniteCategory group_category(const FiniteGroup& G);

struct SimplicialGroup {
  SimplicialSet X;
  std::function<int(int, int, int)> mul;  // (level, a, b) -> ab
  std::function<int(int, int)> inv;
  std::vector<int> one;
  // Group laws, and faces/degeneracies are homomorphisms. Exhaustive over pairs on levels of size
  // at most `exhaustive`, `samples` random pairs and triples elsewhere.
  std::optional<std::string> check_group(int exhaustive, int samples, std::uint64_t seed) const;
};
SimplicialGroup constant_group(const FiniteGroup& G, int N);

// The groupoid Aut_typ(L): objects the isotypical automorphisms, Mor(alpha, beta) the chi in
// Aut_L(S) with beta = c_chi alpha. Its nerve K is a simplicial group under
// (alpha -chi-> beta)(alpha' -chi'-> beta') = (alpha alpha' -beta(chi') chi-> beta beta').
// A simplex alpha0 <-chi1- alpha1 <- ... <-chin- alphan is coded by (alpha0, chi1..chin) in
// mixed radix; chi indexes aut_S and alpha indexes autos.
struct AutTyp {
  SimplicialGroup K;
  std::vector<CategoryAuto> autos;
  int num_autos = 0, num_aut_S = 0;
  int k_one = 0;
  std::vector<int> k_mul, k_inv;        // Aut_L(S) by aut_S index
  std::vector<int> a_mul, a_inv;        // autos by index
  std::vector<int> a_on_k;              // alpha(chi) at alpha * num_aut_S + chi
  std::vector<int> conj;                // c_chi as an autos index
  std::vector<std::vector<int>> restr;  // restr[chi][P]: chi restricted to P -> chi(P)

  std::vector<int> decode(int n, int x) const;  // (alpha0, chi1..chin)
  int encode(const std::vector<int>& v) const;
  std::vector<int> objects(int n, int x) const;  // alpha0..alphan
  // Mor(alpha, beta) as aut_S indices.
  std::vector<int> morphisms(int alpha, int beta) const;
  int components() const;
};
AutTyp aut_typ(const TransporterSystem& L, const IsotypicalAutos& A, int N);

// kappa . xi for kappa in K_n and xi in N_n L: objects (alpha, P) -> alpha(P), morphisms
// (chi, phi) -> beta(phi) o chi restricted to alpha(P).
int act(const AutTyp& K, const TransporterSystem& L, const Nerve& NL, int n, int kappa, int xi);
// Unital, associative, and compatible with faces and degeneracies. Exhaustive on levels with
// |K_n| |N_n L| at most `exhaustive`, sampled elsewhere.
std::optional<std::string> check_action(const AutTyp& K, const TransporterSystem& L, const Nerve& NL,
                                        long exhaustive, int samples, std::uint64_t seed);

// W-bar of a simplicial group: W_0 = *, W_n = K_(n-1) x ... x K_0, held as w[j] = k_(n-1-j).
using WTuple = std::vector<int>;
WTuple wbar_face(const SimplicialGroup& K, int n, int i, const WTuple& w);
WTuple wbar_degen(const SimplicialGroup& K, int n, int i, const WTuple& w);
// Enumerated W-bar; tuples coded in mixed radix. BoundExceeded past bounds().max_simplices.
SimplicialSet wbar(const SimplicialGroup& K, int N);
int wbar_encode(const SimplicialGroup& K, int n, const WTuple& w);
WTuple wbar_decode(const SimplicialGroup& K, int n, int x);

// phi[n][g] in K_(n-1) for n-simplices g of NB(G), 1 <= n <= N.
struct TwistingFunction {
  int N = 0;
  FiniteGroup G;
  std::vector<std::vector<int>> phi;
};
struct TwistingReport {
  std::vector<std::string> failures;  // "relation k at [g1|..|gn]"
  std::vector<int> failed_relations;  // 1..4, sorted, unique
  std::string map_witness;            // first face/degeneracy the W-bar map breaks; empty when fine
  bool ok() const { return failures.empty() && map_witness.empty(); }
  bool failed(int relation) const;
};
// Relations, numbered:
//   1. phi(d_i g) = d_(i-1) phi(g) for i >= 2
//   2. phi(d_1 g) = d_0 phi(g) . phi(d_0 g)
//   3. phi(s_i g) = s_(i-1) phi(g) for i >= 1
//   4. phi(s_0 g) = 1
// and g -> (phi_n(g), phi_(n-1)(d_0 g), ..., phi_1(d_0^(n-1) g)) commutes with faces and
// degeneracies into W-bar K.
TwistingReport check_twisting(const TwistingFunction& phi, const SimplicialGroup& K);
TwistingFunction trivial_twisting(const FiniteGroup& G, const SimplicialGroup& K, int N);

// From t = tau t_U and chi(g, h) = t_U(g) t_U(h) t_U(gh)^-1: phi_n([g1|..|gn]) is the chain
// with objects t(g1..gm) t(g2..gm)^-1 and morphisms chi(g1, g2..gm)^-1 chi(g1, g2..g(m+1)).
TwistingFunction twisting_from_pair(const ExtensionPair& U, const AutTyp& K, int N);
// hat = Aut_L(S) x G with (a, g)(b, h) = (a t(g)(b) chi(g, h), gh), t(g) = phi_1([g]) and chi
// read off phi_2; tau(a, g) = c_a t(g), t_U(g) = (1, g).
ExtensionPair pair_from_twisting(const TransporterSystem& L, const IsotypicalAutos& A, const AutTyp& K,
                                 const TwistingFunction& phi);
// Same construction from t and chi directly; chi = 1 with t a homomorphism gives a split pair.
ExtensionPair pair_from_cocycle(const TransporterSystem& L, const IsotypicalAutos& A, const AutTyp& K,
                                const FiniteGroup& G, const std::vector<int>& t, const std::vector<int>& chi);
// theta(a, g) = gamma(a) t_U(g) from pair_from_twisting(.., twisting_from_pair(U)) back to U.
std::vector<int> pair_roundtrip_iso(const ExtensionPair& U, const ExtensionPair& back);
// chi(g, h) chi(gh, k) = t(g)(chi(h, k)) chi(g, hk) for all g, h, k.
std::optional<std::string> check_cocycle(const ExtensionPair& U);

// E_n = N_n L x N_n B(G), (xi, g) coded as xi |G|^n + g. d_0(xi, g) = (phi_n(g)^-1 d_0 xi, d_0 g),
// the other faces and degeneracies componentwise.
struct TwistedProduct {
  SimplicialSet X;
  Nerve NB;                          // N B(G)
  std::vector<int> radix;            // |G|^n
  std::vector<std::vector<int>> pr;  // projection to N B(G)
};
TwistedProduct twisted_product(const TwistingFunction& phi, const AutTyp& K, const TransporterSystem& L,
                               const Nerve& NL);

// Objects X_0, morphisms X_1 with f: d_0 f -> d_1 f, identity s_0 x, f1 o f2 = d_1 D_2^-1(f1, f2).
// InputError unless D_n = (d_2^(n-1), d_0) is a bijection onto composable pairs for 2 <= n <= N.
FiniteCategory category_from_simplicial(const SimplicialSet& X);
// Levelwise X_n -> N_n C through the edges of each simplex. StructureError if some level is not
// a bijection.
std::vector<std::vector<int>> edge_map(const SimplicialSet& X, const Nerve& NC, const std::vector<int>& on_vertices,
                                       const std::vector<int>& on_edges);

struct NerveIsoReport {
  bool ok = false;
  std::string witness;
  std::vector<int> level_sizes;
  std::vector<std::vector<int>> iso;  // N_n L_U -> E(phi_U)_n
};
// [[phi, t_U(g)]] -> (phi, g) on morphisms, extended to nerves: a bijection N L_U -> E(phi_U) with
// identical face/degeneracy tables and commuting with the projections to N B(G).
NerveIsoReport lu_twisted_product_iso(const ExtensionPair& U, const AutTyp& K, int N);

}  // namespace fk
