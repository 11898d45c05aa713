#pragma once

#include <string>
#include <vector>

#include "fk/ptoral.hpp"

namespace fk {

// Homomorphism between subgroups of one p-toral group S.
// On the identity component, src.A.div_basis() * x maps to L * x (L is r x rank(src)).
// img[i] is the image of the i-th canonical representative of src/src0.
struct Morphism {
  PSub src, dst;
  IntMatrix L;
  std::vector<Elt> img;

  // Same underlying map (destination ignored).
  bool same_map(const Morphism& o) const { return src == o.src && L == o.L && img == o.img; }
  bool operator==(const Morphism& o) const { return same_map(o) && dst == o.dst; }
  bool operator<(const Morphism& o) const;
};

namespace mor {

Elt eval(const PToralGroup& S, const Morphism& f, const Elt& x);
Morphism identity(const PToralGroup& S, const PSub& P);
Morphism inclusion(const PToralGroup& S, const PSub& P, const PSub& Q);
// c_s restricted to P, landing in Q.
Morphism conjugation(const PToralGroup& S, const Elt& s, const PSub& P, const PSub& Q);
// g o f; requires f's image inside g.src.
Morphism compose(const PToralGroup& S, const Morphism& g, const Morphism& f);
Morphism restrict(const PToralGroup& S, const Morphism& f, const PSub& P, const PSub& Q);
Morphism with_target(const PToralGroup& S, const Morphism& f, const PSub& Q);
// Inverse of f viewed as an isomorphism onto its image.
Morphism inverse(const PToralGroup& S, const Morphism& f);
PSub image(const PToralGroup& S, const Morphism& f);
// Image of a subgroup R <= src.
PSub image_of(const PToralGroup& S, const Morphism& f, const PSub& R);

// Determined by images of generators of P (which, with P0, must generate P) and the
// identity-component linear part L.
Morphism from_generators(const PToralGroup& S, const PSub& P, const PSub& Q, const std::vector<Elt>& gens,
                         const std::vector<Elt>& images, const IntMatrix& L);

bool is_homomorphism(const PToralGroup& S, const Morphism& f);
bool is_injective(const PToralGroup& S, const Morphism& f);
// Constraint data making c_s o f = g solvable (same source).
ConjProblem post_conj_problem(const PToralGroup& S, const Morphism& f, const Morphism& g);
// Does c_s o f = g for some s (in R if given)?
bool conj_equivalent(const PToralGroup& S, const Morphism& f, const Morphism& g, const PSub* within = nullptr);

std::string to_string(const PToralGroup& S, const Morphism& f);

}  // namespace mor

// Homomorphisms between subgroups of a finite group, as image lists aligned with P.
enum class HomConstraint { AmbientConjugation, Injective };
std::vector<std::vector<int>> hom_search(const FiniteGroup& G, const ElemSet& P, const ElemSet& Q, HomConstraint c);

}  // namespace fk
