#include "fk/bullet.hpp"

#include <boost/rational.hpp>
#include <set>

#include "fk/fusion.hpp"

namespace fk {

namespace {

using Q = boost::rational<i64>;
using QMat = std::vector<std::vector<Q>>;

QMat to_q(const IntMatrix& M) {
  QMat out(M.rows(), std::vector<Q>(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) out[i][j] = M(i, j);
  return out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& A, int ncols) {
  std::vector<int> piv;
  int row = 0;
  const int m = int(A.size());
  for (int c = 0; c < ncols && row < m; ++c) {
    int sel = -1;
    for (int i = row; i < m; ++i)
      if (A[i][c] != Q(0)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(A[sel], A[row]);
    Q inv = Q(1) / A[row][c];
    for (auto& x : A[row]) x *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || A[i][c] == Q(0)) continue;
      Q f = A[i][c];
      for (std::size_t j = 0; j < A[i].size(); ++j) A[i][j] -= f * A[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

IntMatrix minus_identity(const IntMatrix& w) { return w - IntMatrix::identity(w.rows()); }

bool fixes_pointwise(int p, const IntMatrix& w, const TorusSub& A) {
  if (!(minus_identity(w) * A.div_basis()).is_zero()) return false;
  for (const auto& a : A.finite_gens())
    if (!(torus::apply(p, w, a) == a)) return false;
  return true;
}

}  // namespace

BulletContext BulletContext::make(const PToralGroup& S, const std::vector<IntMatrix>& W) {
  BulletContext ctx{S, {}, 0};
  std::set<IntMatrix> seen;
  std::vector<IntMatrix> gens = W;
  for (int g = 0; g < S.pi().order(); ++g) gens.push_back(S.rho(g));
  IntMatrix id = IntMatrix::identity(S.rank());
  seen.insert(id);
  ctx.W.push_back(id);
  for (std::size_t i = 0; i < ctx.W.size(); ++i)
    for (const auto& g : gens) {
      IntMatrix y = ctx.W[i] * g;
      if (seen.insert(y).second) {
        ctx.W.push_back(y);
        if (int(ctx.W.size()) > bounds().max_group_order) throw BoundExceeded("W is too large (or infinite)");
      }
    }
  int e = 1;
  for (int g = 0; g < S.pi().order(); ++g) e = std::max(e, S.pi().element_order(g));
  while (e > 1) {
    e /= S.prime();
    ++ctx.m;
  }
  return ctx;
}

IResult I_of(const BulletContext& ctx, const TorusSub& A) {
  const int p = ctx.S.prime(), r = ctx.S.rank();
  IResult res;
  IntMatrix stacked(0, r);
  for (std::size_t i = 0; i < ctx.W.size(); ++i)
    if (fixes_pointwise(p, ctx.W[i], A)) {
      res.centralizer.push_back(int(i));
      stacked = IntMatrix::vstack(stacked, minus_identity(ctx.W[i]));
    }
  res.I = TorusSub::kernel(p, stacked);
  res.I0 = res.I.identity_component();
  return res;
}

BulletParts bullet_parts(const BulletContext& ctx, const PSub& P) {
  BulletParts b;
  b.power = sub::power_subgroup(ctx.S, P, ctx.m);
  if (b.power.H != std::vector<int>{0}) throw StructureError("P^[m] is not inside the torus");
  IResult ir = I_of(ctx, b.power.A);
  b.I = ir.I;
  b.I0 = ir.I0;
  if (b.I0.rank() == 0 || P.A.contains(b.I0)) {
    b.bullet = P;
  } else {
    b.bullet = sub::closure(ctx.S, sub::generators(ctx.S, P), IntMatrix::hstack(P.A.div_basis(), b.I0.div_basis()));
  }
  return b;
}

PSub bullet(const BulletContext& ctx, const PSub& P) { return bullet_parts(ctx, P).bullet; }

bool bullet_compatible(const BulletContext& ctx, const Morphism& phi, const IntMatrix& w) {
  const PToralGroup& S = ctx.S;
  const int p = S.prime();
  PSub Pm = sub::power_subgroup(S, phi.src, ctx.m);
  for (const auto& x : sub::generators(S, Pm)) {
    Elt y = mor::eval(S, phi, x);
    if (!(y == S.torus_elt(torus::apply(p, w, x.t)))) return false;
  }
  if (Pm.A.rank() > 0) {
    IntMatrix lhs = phi.L * phi.src.A.div_coords() * Pm.A.div_basis();
    if (!(lhs == w * Pm.A.div_basis())) return false;
  }
  return true;
}

std::optional<IntMatrix> compatible_w(const BulletContext& ctx, const Morphism& phi) {
  for (const auto& w : ctx.W)
    if (bullet_compatible(ctx, phi, w)) return w;
  return std::nullopt;
}

Morphism bullet_map(const BulletContext& ctx, const Morphism& phi, const IntMatrix& w) {
  const PToralGroup& S = ctx.S;
  if (!bullet_compatible(ctx, phi, w)) throw StructureError("bullet map: w does not agree with phi on P^[m]");
  BulletParts bp = bullet_parts(ctx, phi.src);
  PSub Qb = bullet(ctx, phi.dst);
  const PSub& Pb = bp.bullet;
  const int r = S.rank();
  IntMatrix Bb = Pb.A.div_basis();
  IntMatrix L(r, Bb.cols());
  if (Bb.cols() > 0) {
    // Write Bb = [B_P | B_I] Z over the rationals; L = [phi on P0 | w on I0] Z.
    IntMatrix BP = phi.src.A.div_basis(), BI = bp.I0.div_basis();
    IntMatrix comb = IntMatrix::hstack(BP, BI);
    IntMatrix imgs = IntMatrix::hstack(phi.L * phi.src.A.div_coords() * BP, w * BI);
    if (imgs.rows() != r) imgs = IntMatrix(r, comb.cols());
    const int n = comb.cols();
    QMat A = to_q(IntMatrix::hstack(comb, Bb));
    auto piv = rref(A, n);
    // consistency: rows without pivot must be zero on the right-hand side
    for (std::size_t i = piv.size(); i < A.size(); ++i)
      for (int j = n; j < n + Bb.cols(); ++j)
        if (A[i][j] != Q(0)) throw StructureError("bullet map: identity component not spanned");
    // kernel vectors of comb must map to zero
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    for (int f = 0; f < n; ++f) {
      if (is_piv[f]) continue;
      std::vector<Q> v(n, Q(0));
      v[f] = 1;
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -A[i][f];
      for (int row = 0; row < r; ++row) {
        Q s(0);
        for (int j = 0; j < n; ++j) s += Q(imgs(row, j)) * v[j];
        if (s != Q(0)) throw StructureError("bullet map: phi and w disagree on the overlap of identity components");
      }
    }
    for (int col = 0; col < Bb.cols(); ++col) {
      std::vector<Q> z(n, Q(0));
      for (std::size_t i = 0; i < piv.size(); ++i) z[piv[i]] = A[i][n + col];
      for (int row = 0; row < r; ++row) {
        Q s(0);
        for (int j = 0; j < n; ++j) s += Q(imgs(row, j)) * z[j];
        if (s.denominator() != 1) throw StructureError("bullet map: linear part is not integral");
        L(row, col) = s.numerator();
      }
    }
  }
  std::vector<Elt> gens = sub::generators(S, phi.src), images;
  for (const auto& x : gens) images.push_back(mor::eval(S, phi, x));
  try {
    return mor::from_generators(S, Pb, Qb, gens, images, L);
  } catch (const InputError& e) {
    throw StructureError(std::string("bullet map: not well defined: ") + e.what());
  }
}

std::vector<PSub> f_bullet(const FusionSystem& F, const BulletContext& ctx, const std::vector<PSub>& seed) {
  const PToralGroup& S = ctx.S;
  std::vector<PSub> reps;
  auto add = [&](const PSub& P) {
    for (const auto& R : reps)
      if (conjugator(S, R, P)) return false;
    reps.push_back(P);
    return true;
  };
  for (const auto& P : seed) add(bullet(ctx, P));
  std::size_t done = 0;
  int rounds = 0;
  while (done < reps.size()) {
    if (++rounds > bounds().bullet_cap) throw BoundExceeded("bullet closure did not stabilize within the iteration cap");
    std::size_t end = reps.size();
    for (std::size_t i = done; i < end; ++i) {
      PSub R = reps[i];
      for (const auto& Q : F.class_reps(R)) add(bullet(ctx, Q));
    }
    done = end;
  }
  std::sort(reps.begin(), reps.end(), [](const PSub& a, const PSub& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a < b;
  });
  return reps;
}

}  // namespace fk
