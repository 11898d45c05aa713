#include "fk/groups.hpp"

#include <numeric>

namespace fk::groups {

FiniteGroup symmetric(int n) {
  if (n <= 1) return FiniteGroup::trivial();
  Perm cyc(n), tr(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  std::iota(tr.begin(), tr.end(), 0);
  std::swap(tr[0], tr[1]);
  return FiniteGroup::from_perms({cyc, tr}, n);
}

FiniteGroup alternating(int n) {
  if (n <= 2) return FiniteGroup::trivial();
  std::vector<Perm> gens;
  for (int i = 2; i < n; ++i) {
    Perm c(n);
    std::iota(c.begin(), c.end(), 0);
    c[0] = 1;
    c[1] = i;
    c[i] = 0;
    gens.push_back(c);
  }
  return FiniteGroup::from_perms(gens, n);
}

FiniteGroup dihedral8_in_s4() { return FiniteGroup::from_perms({parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)}, 4); }

PToralGroup infinite_dihedral() {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  return PToralGroup(2, 1, z2, {1}, {IntMatrix::from_rows({{-1}})});
}

SylowEmbedding subgroup_of(const FiniteGroup& G, const ElemSet& H, int p) {
  return {PToralGroup::finite(p, G.subgroup_group(H)), H};
}

SylowEmbedding sylow_of(const FiniteGroup& G, int p) { return subgroup_of(G, G.sylow(p), p); }

}  // namespace fk::groups
