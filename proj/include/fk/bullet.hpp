#pragma once

#include <vector>

#include "fk/morphism.hpp"

namespace fk {

class FusionSystem;

// S with T = S0, a finite group W of automorphisms of T containing the action of S,
// and m with p^m the exponent of S/T.
struct BulletContext {
  PToralGroup S;
  std::vector<IntMatrix> W;
  int m = 0;

  // Closes W under products and adds the action matrices of S.
  static BulletContext make(const PToralGroup& S, const std::vector<IntMatrix>& W);
};

struct IResult {
  TorusSub I;
  TorusSub I0;
  std::vector<int> centralizer;  // indices into ctx.W fixing A pointwise
};
// I(A) = C_T(C_W(A)) for A <= T.
IResult I_of(const BulletContext& ctx, const TorusSub& A);

struct BulletParts {
  PSub power;   // P^[m], a subgroup of T
  TorusSub I;   // I(P^[m])
  TorusSub I0;
  PSub bullet;  // P . I(P^[m])0
};
BulletParts bullet_parts(const BulletContext& ctx, const PSub& P);
PSub bullet(const BulletContext& ctx, const PSub& P);

// Does w agree with phi on P^[m]?
bool bullet_compatible(const BulletContext& ctx, const Morphism& phi, const IntMatrix& w);
// phi^bullet: P^bullet -> Q^bullet with phi(gh) = phi(g) w(h). Throws StructureError when w is
// not compatible or the formula is not well defined.
Morphism bullet_map(const BulletContext& ctx, const Morphism& phi, const IntMatrix& w);
// Some w in W compatible with phi, if any.
std::optional<IntMatrix> compatible_w(const BulletContext& ctx, const Morphism& phi);

// S-class representatives of {P^bullet} over the seed family, closed under F-conjugacy.
std::vector<PSub> f_bullet(const FusionSystem& F, const BulletContext& ctx, const std::vector<PSub>& seed);

}  // namespace fk
