#include <catch2/catch_amalgamated.hpp>

#include "curvlab/decomp.hpp"
#include "curvlab/models.hpp"
#include "curvlab/oracle.hpp"

using namespace curvlab;

TEST_CASE("gaussian rational arithmetic basics") {
  const GRat i(Rat(0), Rat(1));
  CHECK((i * i) == GRat(-1));
  CHECK(conj(GRat(Rat(1, 2), Rat(-3, 4))) == GRat(Rat(1, 2), Rat(3, 4)));
  CHECK((GRat(Rat(1, 3)) + GRat(Rat(1, 6))) == GRat(Rat(1, 2)));
  CHECK(rat_from_rounded(0.25) == Rat(1, 4));
  CHECK(rat_from_rounded(3.0000000001) == Rat(3));
  CHECK(rat_from_rounded(-1.0 / 3) == Rat(-333333333, 1000000000));
}

TEST_CASE("hand-built cases hit every predicate branch") {
  const ExactZero zero;

  RatBlock direct;  // a = 1, b = ap = -1, bp = 1, rest zero
  direct.a = GRat(1);
  direct.b = GRat(-1);
  direct.ap = GRat(-1);
  direct.bp = GRat(1);
  auto v = check_block(direct);
  CHECK(v.direct);
  CHECK(v.reduced);
  CHECK(v.dual);
  CHECK(v.coeffs);
  CHECK(v.constraints);
  CHECK(v.consistent);

  RatBlock reduced_only;  // a = bp = 1, b = ap = 0: balance holds, dual fails
  reduced_only.a = GRat(1);
  reduced_only.bp = GRat(1);
  v = check_block(reduced_only);
  CHECK(v.reduced);
  CHECK_FALSE(v.dual);
  CHECK_FALSE(v.direct);
  CHECK(v.consistent);

  RatBlock dual_only;  // x nonzero kills constancy but not the dual pairing
  dual_only.x = GRat(1);
  v = check_block(dual_only);
  CHECK(v.dual);
  CHECK_FALSE(v.reduced);
  CHECK_FALSE(v.direct);
  CHECK_FALSE(v.coeffs);
  CHECK(v.consistent);

  // Constant value detected with the right constant only.
  RatBlock scaled;
  scaled.k = scaled.l = GRat(Rat(3, 2));
  scaled.u = scaled.w = scaled.v = GRat(Rat(3, 4));
  v = check_block(scaled);
  CHECK(v.direct);
  CHECK(constancy_coefficients_vanish(scaled, scaled.k, zero));
  CHECK_FALSE(constancy_coefficients_vanish(scaled, GRat(1), zero));
}

TEST_CASE("exhaustive grid sweep is clean") {
  const SweepResult r = run_grid_sweep();
  CHECK(r.cases == 3249);
  CHECK(r.disagreements == 0);
  CHECK(r.constraint_violations == 0);
  CHECK(r.n_direct > 0);
  CHECK(r.n_reduced > r.n_direct);  // reduced alone is strictly weaker here
  CHECK(r.n_dual > 0);
  CHECK(r.n_coeffs == r.n_direct);
}

TEST_CASE("seeded random sweep is clean and hits both truth values") {
  const SweepResult r = run_random_sweep(10000, 20240817ULL);
  CHECK(r.cases == 10000);
  CHECK(r.disagreements == 0);
  CHECK(r.constraint_violations == 0);
  CHECK(r.n_direct >= 3000);   // the direct-true family alone guarantees this
  CHECK(r.n_reduced >= r.n_direct);
  CHECK(r.n_direct < r.cases);
  CHECK(r.n_coeffs == r.n_direct);

  // Determinism: same seed, same tallies.
  const SweepResult r2 = run_random_sweep(10000, 20240817ULL);
  CHECK(r2.n_direct == r.n_direct);
  CHECK(r2.n_reduced == r.n_reduced);
  CHECK(r2.n_dual == r.n_dual);
}

TEST_CASE("numeric blocks bridge into the exact domain") {
  // Constant-sectional model: the rounded block passes all predicates.
  {
    const auto c = compute_curvature(make_cp2(2.0), {0.1, 0.2, -0.1, 0.3});
    const auto d = decompose(c);
    const RatBlock m = rationalize(d.block);
    const auto v = check_block(m);
    CHECK(v.direct);
    CHECK(v.reduced);
    CHECK(v.dual);
    CHECK(v.coeffs);
    CHECK(v.constraints);
    CHECK(m.k == GRat(2));
    CHECK(m.v == GRat(1));
  }
  // Nilmanifold: exact quarter values survive the bridge; constancy fails.
  {
    const auto c = compute_curvature(make_kt(), {0.6, 0.0, 0.2, 0.4});
    const auto d = decompose(c);
    const RatBlock m = rationalize(d.block);
    const auto v = check_block(m);
    CHECK_FALSE(v.direct);
    CHECK_FALSE(v.reduced);
    CHECK_FALSE(v.dual);
    CHECK(v.constraints);
    CHECK(v.consistent);
    CHECK(m.x == GRat(Rat(1, 4)));
    CHECK(m.v == GRat(Rat(-1, 8)));
  }
}
