#pragma once

#include <string>
#include <vector>

#include "fk/fusion.hpp"

// Standard small systems used by the tests, the acceptance run and the CLI.
namespace fk::examples {

// S4 with S = <(1 2 3 4), (1 3)>.
FiniteGroup s4();
ElemSet d8_in_s4(const FiniteGroup& s4);
FusionSystem d8_in_s4_system();
// Subgroup of S4 from cycle strings, translated into the Sylow subgroup of F.
PSub ambient_subgroup(const FusionSystem& F, const std::vector<std::string>& cycles);

// Z/9 with the inversion of its subgroup of order 3 as the only extra generator.
FusionSystem z9_system();
PSub z9_subgroup(const FusionSystem& F, int order);

// Infinite dihedral group at p = 2 with W = {1, -1}.
std::vector<IntMatrix> sign_W();
// F_S(S) over the infinite dihedral group.
FusionSystem dihedral_inner_system();
// Adds an automorphism of order 3 of the Klein group <1/2, reflection>.
FusionSystem dihedral_so3_system();
// Torus element a / 2^k of the infinite dihedral group.
Elt dihedral_torus(const PToralGroup& S, i64 a, int k);
Elt dihedral_reflection(const PToralGroup& S, i64 a = 0, int k = 0);
// S-class representatives of subgroups whose elements have order <= 2^e, plus T and S.
std::vector<PSub> dihedral_family(const PToralGroup& S, int e);
// ×3 on Z/8 inside the torus, a morphism that is not a restriction of W.
FusionSystem dihedral_bad_star_system();

}  // namespace fk::examples
