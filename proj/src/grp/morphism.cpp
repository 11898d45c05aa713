#include "fk/morphism.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace fk {

bool Morphism::operator<(const Morphism& o) const {
  if (!(src == o.src)) return src < o.src;
  if (!(dst == o.dst)) return dst < o.dst;
  if (!(L == o.L)) return L < o.L;
  return img < o.img;
}

namespace mor {

Elt eval(const PToralGroup& S, const Morphism& f, const Elt& x) {
  auto [idx, d] = sub::decompose(S, f.src, x);
  if (f.L.cols() == 0) return f.img[idx];
  TorusElt c = f.src.A.identity_coords(d);
  return S.mul(S.torus_elt(torus::apply(S.prime(), f.L, c)), f.img[idx]);
}

Morphism identity(const PToralGroup& S, const PSub& P) { return {P, P, P.A.div_basis(), sub::pi0_reps(S, P)}; }

Morphism inclusion(const PToralGroup& S, const PSub& P, const PSub& Q) {
  if (!sub::contains(S, Q, P)) throw StructureError("inclusion: not a subgroup");
  return {P, Q, P.A.div_basis(), sub::pi0_reps(S, P)};
}

Morphism conjugation(const PToralGroup& S, const Elt& s, const PSub& P, const PSub& Q) {
  Morphism f{P, Q, S.rho(s.g) * P.A.div_basis(), {}};
  for (const auto& x : sub::pi0_reps(S, P)) f.img.push_back(S.conj(s, x));
  return f;
}

Morphism compose(const PToralGroup& S, const Morphism& g, const Morphism& f) {
  Morphism h{f.src, g.dst, IntMatrix(), {}};
  h.L = g.L * g.src.A.div_coords() * f.L;
  if (h.L.rows() != S.rank()) h.L = IntMatrix(S.rank(), f.src.A.rank());
  for (const auto& y : f.img) h.img.push_back(eval(S, g, y));
  return h;
}

Morphism restrict(const PToralGroup& S, const Morphism& f, const PSub& P, const PSub& Q) {
  if (!sub::contains(S, f.src, P)) throw StructureError("restrict: not a subgroup of the source");
  Morphism h{P, Q, f.L * f.src.A.div_coords() * P.A.div_basis(), {}};
  if (h.L.rows() != S.rank()) h.L = IntMatrix(S.rank(), P.A.rank());
  for (const auto& x : sub::pi0_reps(S, P)) {
    Elt y = eval(S, f, x);
    if (!sub::contains(S, Q, y)) throw StructureError("restrict: image leaves the target");
    h.img.push_back(y);
  }
  if (!Q.A.contains(TorusSub::from_generators(S.prime(), S.rank(), h.L, {}))) throw StructureError("restrict: image leaves the target");
  return h;
}

Morphism with_target(const PToralGroup& S, const Morphism& f, const PSub& Q) {
  Morphism h = f;
  h.dst = Q;
  for (const auto& y : f.img)
    if (!sub::contains(S, Q, y)) throw StructureError("with_target: image leaves the target");
  return h;
}

PSub image(const PToralGroup& S, const Morphism& f) {
  std::vector<Elt> gens;
  for (const auto& x : sub::generators(S, f.src)) gens.push_back(eval(S, f, x));
  return sub::closure(S, gens, f.L);
}

PSub image_of(const PToralGroup& S, const Morphism& f, const PSub& R) {
  std::vector<Elt> gens;
  for (const auto& x : sub::generators(S, R)) gens.push_back(eval(S, f, x));
  IntMatrix L = f.L * f.src.A.div_coords() * R.A.div_basis();
  if (L.rows() != S.rank()) L = IntMatrix(S.rank(), 0);
  return sub::closure(S, gens, L);
}

Morphism inverse(const PToralGroup& S, const Morphism& f) {
  const int p = S.prime();
  PSub Q = image(S, f);
  Morphism g{Q, f.src, IntMatrix(), {}};
  IntMatrix CL = Q.A.div_coords() * f.L;
  if (CL.rows() != CL.cols()) throw StructureError("inverse: linear part is not square");
  IntMatrix CLinv = inverse_unimodular(CL);
  g.L = f.src.A.div_basis() * CLinv;
  if (g.L.rows() != S.rank()) g.L = IntMatrix(S.rank(), Q.A.rank());
  auto src_reps = sub::pi0_reps(S, f.src);
  for (const auto& q : sub::pi0_reps(S, Q)) {
    bool found = false;
    for (std::size_t i = 0; i < src_reps.size() && !found; ++i) {
      if (f.img[i].g != q.g) continue;
      auto x = solve_linear(p, f.L, torus::sub(p, q.t, f.img[i].t));
      if (!x) continue;
      TorusElt d = torus::apply(p, f.src.A.div_basis(), *x);
      if (f.src.A.rank() == 0) d = torus::zero(S.rank());
      g.img.push_back(S.mul(S.torus_elt(d), src_reps[i]));
      found = true;
    }
    if (!found) throw StructureError("inverse: morphism is not onto its image");
  }
  return g;
}

Morphism from_generators(const PToralGroup& S, const PSub& P, const PSub& Q, const std::vector<Elt>& gens,
                         const std::vector<Elt>& images, const IntMatrix& L_in) {
  const int p = S.prime();
  if (gens.size() != images.size()) throw InputError("morphism: generator and image counts differ");
  IntMatrix L = L_in.rows() == S.rank() && L_in.cols() == P.A.rank() ? L_in : IntMatrix(S.rank(), P.A.rank());
  if (P.A.rank() > 0 && !(L_in.rows() == S.rank() && L_in.cols() == P.A.rank()))
    throw InputError("morphism: linear part has the wrong shape");
  auto reps = sub::pi0_reps(S, P);
  std::vector<std::optional<Elt>> img(reps.size());
  auto lin = [&](const TorusElt& d) -> Elt {
    if (P.A.rank() == 0) return S.identity();
    return S.torus_elt(torus::apply(p, L, P.A.identity_coords(d)));
  };
  // rep 0 is the identity coset
  img[0] = S.identity();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elt y = S.mul(reps[i], gens[k]);
      auto [j, d] = sub::decompose(S, P, y);
      // phi(y) = lin(d) phi(rep_j) = phi(rep_i) phi(gen_k)
      Elt v = S.mul(S.inv(lin(d)), S.mul(*img[i], images[k]));
      if (img[j]) {
        if (!(*img[j] == v)) throw InputError("morphism: generator images do not define a homomorphism");
        continue;
      }
      img[j] = v;
      queue.push_back(j);
    }
  }
  Morphism f{P, Q, L, {}};
  for (auto& v : img) {
    if (!v) throw InputError("morphism: elements do not generate the source");
    f.img.push_back(*v);
  }
  if (!is_homomorphism(S, f)) throw InputError("morphism: generator images do not define a homomorphism");
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!(eval(S, f, gens[k]) == images[k])) throw InputError("morphism: generator images do not define a homomorphism");
  return f;
}

bool is_homomorphism(const PToralGroup& S, const Morphism& f) {
  const auto& P = f.src;
  auto reps = sub::pi0_reps(S, P);
  if (reps.size() != f.img.size()) return false;
  for (const auto& y : f.img)
    if (!sub::contains(S, f.dst, y)) return false;
  if (P.A.rank() > 0) {
    if (!(f.dst.A.ann() * f.L).is_zero()) return false;
    IntMatrix B = P.A.div_basis(), C = P.A.div_coords();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      IntMatrix Mh = C * S.rho(reps[i].g) * B;
      if (!(f.L * Mh == S.rho(f.img[i].g) * f.L)) return false;
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (!(eval(S, f, S.mul(reps[i], reps[j])) == S.mul(f.img[i], f.img[j]))) return false;
  return true;
}

bool is_injective(const PToralGroup& S, const Morphism& f) {
  const int p = S.prime();
  if (f.src.A.rank() > 0 && !(TorusSub::kernel(p, f.L) == TorusSub::trivial(p, f.src.A.rank()))) return false;
  TorusSub lin_image = TorusSub::from_generators(p, S.rank(), f.L, {});
  for (std::size_t i = 1; i < f.img.size(); ++i)
    if (f.img[i].g == 0 && lin_image.contains(f.img[i].t)) return false;
  return true;
}

ConjProblem post_conj_problem(const PToralGroup& S, const Morphism& f, const Morphism& g) {
  ConjProblem prob;
  for (const auto& x : sub::generators(S, f.src)) prob.fix.push_back({eval(S, f, x), eval(S, g, x)});
  if (f.L.cols() > 0) prob.lin.push_back({f.L, g.L});
  return prob;
}

bool conj_equivalent(const PToralGroup& S, const Morphism& f, const Morphism& g, const PSub* within) {
  if (!(f.src == g.src)) return false;
  ConjProblem prob = post_conj_problem(S, f, g);
  if (within) prob.within = *within;
  return find_conjugator(S, prob).has_value();
}

std::string to_string(const PToralGroup& S, const Morphism& f) {
  std::ostringstream os;
  auto gens = sub::generators(S, f.src);
  os << '{';
  for (std::size_t i = 0; i < gens.size(); ++i)
    os << (i ? ", " : "") << S.to_string(gens[i]) << " -> " << S.to_string(eval(S, f, gens[i]));
  if (f.src.A.rank() > 0) os << (gens.empty() ? "" : ", ") << "linear " << f.L.to_string();
  os << '}';
  return os.str();
}

}  // namespace mor

std::vector<std::vector<int>> hom_search(const FiniteGroup& G, const ElemSet& P, const ElemSet& Q, HomConstraint c) {
  std::set<std::vector<int>> found;
  if (c == HomConstraint::AmbientConjugation) {
    for (int g : G.transporter(P, Q)) {
      std::vector<int> im;
      for (int x : P) im.push_back(G.conj(g, x));
      found.insert(im);
    }
    return {found.begin(), found.end()};
  }
  std::vector<int> gens = G.generators_of(P);
  std::vector<int> pos(G.order(), -1);
  for (std::size_t i = 0; i < P.size(); ++i) pos[P[i]] = int(i);
  std::vector<int> choice(gens.size(), 0);
  const std::size_t k = gens.size();
  i64 total = 1;
  for (std::size_t i = 0; i < k; ++i) total = mul_checked(total, i64(Q.size()));
  if (total > i64(bounds().functor_search)) throw BoundExceeded("hom_search: too many generator images");
  for (i64 n = 0; n < total; ++n) {
    i64 rest = n;
    for (std::size_t i = 0; i < k; ++i) {
      choice[i] = Q[rest % Q.size()];
      rest /= Q.size();
    }
    std::vector<int> im(P.size(), -1);
    im[pos[0]] = 0;
    std::deque<int> queue{0};
    bool ok = true;
    while (!queue.empty() && ok) {
      int x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < k; ++i) {
        int y = G.mul(x, gens[i]);
        int v = G.mul(im[pos[x]], choice[i]);
        if (im[pos[y]] < 0) {
          im[pos[y]] = v;
          queue.push_back(y);
        } else if (im[pos[y]] != v) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (std::size_t a = 0; a < P.size() && ok; ++a)
      for (std::size_t b = 0; b < P.size(); ++b)
        if (im[pos[G.mul(P[a], P[b])]] != G.mul(im[a], im[b])) {
          ok = false;
          break;
        }
    if (!ok) continue;
    std::set<int> distinct(im.begin(), im.end());
    if (distinct.size() != P.size()) continue;
    found.insert(im);
  }
  return {found.begin(), found.end()};
}

}  // namespace fk
