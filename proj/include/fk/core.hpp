#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fk {

using i64 = std::int64_t;

// Input that cannot be interpreted (bad spec text, non-subgroup, etc).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration hit a configured limit; the answer is unknown, not negative.
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal consistency failure: some structure is not what it claims to be.
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Bounds {
  int max_group_order = 2048;    // finite groups stored by table
  int max_pi0 = 4096;            // |P/P0| for subgroups
  int torsion_exponent = 6;      // sampled torsion has exponent <= p^this
  int max_denominator_exp = 40;  // exact torus arithmetic stays below p^this
  int composite_length = 8;      // generated fusion systems
  int bullet_cap = 64;
  int functor_search = 2000000;  // backtracking nodes for isotypical autos
  int max_quotient = 4096;       // coset enumerations
  int max_simplices = 4000000;   // per level of an enumerated simplicial set

  // Reads FUSIONKIT_BOUNDS ("key=value,key=value") on top of the defaults.
  static Bounds from_env();
  void apply(const std::string& spec);
};

// Process-wide bounds. Set once at startup; read everywhere.
Bounds& bounds();

}  // namespace fk
