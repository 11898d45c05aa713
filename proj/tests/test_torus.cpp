#include <random>

#include "doctest.h"
#include "fk/torus.hpp"

using namespace fk;

namespace {

// Every point of (1/p^e Z / Z)^2.
std::vector<TorusElt> grid2(int p, int e) {
  std::vector<TorusElt> out;
  i64 m = ipow(p, e);
  for (i64 a = 0; a < m; ++a)
    for (i64 b = 0; b < m; ++b) out.push_back(torus::make(p, e, {a, b}));
  return out;
}

}  // namespace

TEST_CASE("smith form reconstructs the matrix") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + trial % 3, c = 1 + (trial / 3) % 3;
    IntMatrix M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = d(rng);
    SmithForm sf = smith(M);
    CHECK(sf.U * M * sf.V == sf.D);
    CHECK(sf.U * sf.Uinv == IntMatrix::identity(r));
    CHECK(sf.V * sf.Vinv == IntMatrix::identity(c));
    for (std::size_t i = 0; i + 1 < sf.diag.size(); ++i)
      if (sf.diag[i] != 0) CHECK(sf.diag[i + 1] % sf.diag[i] == 0);
  }
}

TEST_CASE("kernel of small maps on the circle") {
  TorusSub whole = TorusSub::kernel(2, IntMatrix(1, 1));
  CHECK(whole.rank() == 1);
  CHECK(whole.finite_order() == 1);
  TorusSub two = TorusSub::kernel(2, IntMatrix::from_rows({{2}}));
  CHECK(two.rank() == 0);
  CHECK(two.finite_order() == 2);
  CHECK(two.contains(torus::make(2, 1, {1})));
  CHECK(!two.contains(torus::make(2, 2, {1})));
  // fixed points of inversion
  CHECK(TorusSub::kernel(2, IntMatrix::from_rows({{-2}})) == two);
  // odd multiplier is injective
  CHECK(TorusSub::kernel(2, IntMatrix::from_rows({{3}})) == TorusSub::trivial(2, 1));
}

TEST_CASE("kernel agrees with brute force on 2x2 matrices") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int p : {2, 3}) {
    int e = p == 2 ? 6 : 3;
    auto pts = grid2(p, e);
    for (int trial = 0; trial < 40; ++trial) {
      IntMatrix M(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M(i, j) = d(rng);
      TorusSub K = TorusSub::kernel(p, M);
      for (const auto& x : pts) {
        bool brute = torus::apply(p, M, x).is_zero();
        REQUIRE(K.contains(x) == brute);
      }
    }
  }
}

TEST_CASE("subgroup generated by finite elements") {
  TorusSub z8 = TorusSub::from_generators(2, 1, IntMatrix(1, 0), {torus::make(2, 3, {1})});
  CHECK(z8.rank() == 0);
  CHECK(z8.finite_order() == 8);
  CHECK(z8.finite_reps().size() == 8);
  TorusSub again = TorusSub::from_generators(2, 1, IntMatrix(1, 0), {torus::make(2, 3, {3}), torus::make(2, 2, {1})});
  CHECK(again == z8);
  TorusSub t = TorusSub::from_generators(2, 1, IntMatrix::from_rows({{1}}), {torus::make(2, 3, {1})});
  CHECK(t == TorusSub::whole(2, 1));
}

TEST_CASE("canonical coset representatives") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix M(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) M(i, j) = d(rng);
    TorusSub A = TorusSub::kernel(2, M);
    auto pts = grid2(2, 3);
    for (const auto& x : pts) {
      TorusElt c = A.canon_mod(x);
      CHECK(A.contains(torus::sub(2, x, c)));
      for (const auto& y : pts)
        if (A.contains(torus::sub(2, x, y))) CHECK(A.canon_mod(y) == c);
    }
    if (A.rank() == 0) {
      auto reps = A.finite_reps();
      for (std::size_t i = 0; i < reps.size(); ++i) CHECK(A.finite_index(reps[i]) == int(i));
    }
  }
}

TEST_CASE("solve_linear finds solutions exactly when they exist") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> d(-6, 6);
  auto pts = grid2(2, 3);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix M(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) M(i, j) = d(rng);
    for (const auto& c : pts) {
      auto sol = solve_linear(2, M, c);
      if (sol) CHECK(torus::apply(2, M, *sol) == c);
      // any grid solution implies solvability
      if (!sol)
        for (const auto& x : pts) CHECK(torus::apply(2, M, x) != c);
    }
  }
}
