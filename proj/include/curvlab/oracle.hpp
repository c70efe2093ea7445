#pragma once

#include <cstdint>

#include "curvlab/block_conditions.hpp"
#include "curvlab/rational.hpp"
#include "curvlab/sampling.hpp"

// Exact oracle for the block predicates. Every case evaluates the three
// predicate forms and the nine coefficient groups in Gaussian-rational
// arithmetic and cross-checks the two equivalence claims
//
//   direct  ==  reduced && dual
//   coeffs(m, m.k) vanish  ==  direct
//
// on data satisfying the standing constraints (balance and real v). Cases
// come from an exhaustive small grid and from seeded random sweeps that mix
// generic blocks with constructively direct-true and reduced-true families,
// so both branches of each equivalence get exercised.

namespace curvlab {

using RatBlock = BlockParams<GRat>;

struct OracleVerdict {
  bool direct = false, reduced = false, dual = false, coeffs = false;
  bool constraints = false;
  bool consistent = false;
};

inline OracleVerdict check_block(const RatBlock& m) {
  OracleVerdict v;
  const ExactZero zero;
  v.direct = constant_direct(m, zero);
  v.reduced = constant_reduced(m, zero);
  v.dual = dual_pair(m, zero);
  v.coeffs = constancy_coefficients_vanish(m, m.k, zero);
  v.constraints = standing_constraints(m, zero);
  v.consistent = (v.direct == (v.reduced && v.dual)) && (v.coeffs == v.direct);
  return v;
}

struct SweepResult {
  long long cases = 0;
  long long n_direct = 0, n_reduced = 0, n_dual = 0, n_coeffs = 0;
  long long constraint_violations = 0;
  long long disagreements = 0;
};

namespace detail {

inline void tally(SweepResult& r, const RatBlock& m) {
  const OracleVerdict v = check_block(m);
  ++r.cases;
  r.n_direct += v.direct;
  r.n_reduced += v.reduced;
  r.n_dual += v.dual;
  r.n_coeffs += v.coeffs;
  r.constraint_violations += !v.constraints;
  r.disagreements += !v.consistent;
}

}  // namespace detail

// Exhaustive grid: Re and Im of x, a, b, ap range over {-1, 0, 1} and
// bp = a + b - ap is kept only when its parts stay in {-1, 0, 1};
// k = l = u = w = v = 0. That yields 9 * 19^2 = 3249 admissible cases.
inline SweepResult run_grid_sweep() {
  SweepResult r;
  const int vals[3] = {-1, 0, 1};
  for (int xr = 0; xr < 3; ++xr)
    for (int xi = 0; xi < 3; ++xi)
      for (int ar = 0; ar < 3; ++ar)
        for (int ai = 0; ai < 3; ++ai)
          for (int br = 0; br < 3; ++br)
            for (int bi = 0; bi < 3; ++bi)
              for (int pr = 0; pr < 3; ++pr)
                for (int pi = 0; pi < 3; ++pi) {
                  RatBlock m;
                  m.x = GRat(vals[xr], vals[xi]);
                  m.a = GRat(vals[ar], vals[ai]);
                  m.b = GRat(vals[br], vals[bi]);
                  m.ap = GRat(vals[pr], vals[pi]);
                  m.bp = m.a + m.b - m.ap;
                  const auto in_range = [](const Rat& t) {
                    return t == Rat(-1) || t == Rat(0) || t == Rat(1);
                  };
                  if (!in_range(m.bp.re) || !in_range(m.bp.im)) continue;
                  detail::tally(r, m);
                }
  return r;
}

enum class BlockFamily { generic, direct_true, reduced_true };

inline RatBlock random_block(SplitMix64& rng, BlockFamily fam) {
  static const Rat set[7] = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0),
                             Rat(1, 2), Rat(1), Rat(2)};
  const auto rr = [&]() { return set[rng.pick(7)]; };
  const auto rc = [&]() { return GRat(rr(), rr()); };

  RatBlock m;
  switch (fam) {
    case BlockFamily::generic:
      m.k = rr();
      m.l = rr();
      m.u = rr();
      m.w = rr();
      m.v = rr();  // real by construction
      m.x = rc();
      m.a = rc();
      m.b = rc();
      m.ap = rc();
      m.bp = m.a + m.b - m.ap;  // balance by construction
      break;
    case BlockFamily::direct_true:
      m.k = rr();
      m.l = m.k;
      m.u = rr();
      m.v = rr();
      m.w = m.k + m.k - m.u - m.v - m.v;
      m.a = rc();
      m.b = -m.a;
      m.ap = -m.a;
      m.bp = m.a;
      m.x = GRat(0);
      break;
    case BlockFamily::reduced_true:
      m.k = rr();
      m.l = rr();
      m.u = rr();
      m.v = rr();
      m.w = m.k + m.l - m.u - m.v - m.v;
      m.a = rc();
      m.bp = m.a;
      m.ap = rc();
      m.b = m.ap;
      m.x = GRat(0);
      break;
  }
  return m;
}

// Callback form: on_case(index, block, verdict) fires for every generated
// case, in order, so callers can log cases or capture counterexamples.
template <class F>
SweepResult run_random_sweep(long long n, std::uint64_t seed, F&& on_case) {
  SweepResult r;
  SplitMix64 rng(seed);
  for (long long i = 0; i < n; ++i) {
    const auto fam = static_cast<BlockFamily>(i % 3);
    const RatBlock m = random_block(rng, fam);
    const OracleVerdict v = check_block(m);
    ++r.cases;
    r.n_direct += v.direct;
    r.n_reduced += v.reduced;
    r.n_dual += v.dual;
    r.n_coeffs += v.coeffs;
    r.constraint_violations += !v.constraints;
    r.disagreements += !v.consistent;
    on_case(i, m, v);
  }
  return r;
}

inline SweepResult run_random_sweep(long long n, std::uint64_t seed) {
  return run_random_sweep(n, seed,
                          [](long long, const RatBlock&, const OracleVerdict&) {});
}

// Bridge a floating-point block into the exact domain by rounding every
// component to the nearest 1e-9.
template <class C>
RatBlock rationalize(const BlockParams<C>& p) {
  const auto g = [](const C& z) {
    return GRat(rat_from_rounded(std::real(z)), rat_from_rounded(std::imag(z)));
  };
  RatBlock m;
  m.k = g(p.k);
  m.l = g(p.l);
  m.u = g(p.u);
  m.w = g(p.w);
  m.v = g(p.v);
  m.x = g(p.x);
  m.a = g(p.a);
  m.b = g(p.b);
  m.ap = g(p.ap);
  m.bp = g(p.bp);
  return m;
}

}  // namespace curvlab
