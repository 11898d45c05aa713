#pragma once

#include "fk/ptoral.hpp"

namespace fk::groups {

FiniteGroup symmetric(int n);
FiniteGroup alternating(int n);
FiniteGroup dihedral8_in_s4();  // <(1 2 3 4), (1 3)> acting on 4 points
// Z/p^inf x| Z/2 with the generator acting by -1.
PToralGroup infinite_dihedral();
// The ambient finite group S as a p-toral group of rank 0 together with
// the element ids of S inside G (sub_to_ambient[i] is S-element i in G).
struct SylowEmbedding {
  PToralGroup S;
  ElemSet in_ambient;
};
SylowEmbedding sylow_of(const FiniteGroup& G, int p);
SylowEmbedding subgroup_of(const FiniteGroup& G, const ElemSet& H, int p);

}  // namespace fk::groups
