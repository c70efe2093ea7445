#pragma once

#include <array>
#include <complex>

// Scalar-generic form of the (1,1)-block of a curvature matrix and the
// algebraic conditions for pointwise-constant sectional values on complex
// lines. The same code runs on floating-point blocks extracted from model
// curvature (with a tolerance zero test) and on exact rational blocks in the
// oracle (with an exact zero test), so the two paths cannot drift apart.
//
// Parameter layout, with M[i][j] the block matrix in the complex-line basis
// (z1 zbar1, z1 zbar2, z2 zbar1, z2 zbar2):
//
//   [ k    conj(a)  a        w  ]
//   [ conj(ap) conj(x) conj(v) conj(b) ]
//   [ ap   v        x        b  ]
//   [ u    conj(bp) bp       l  ]
//
// k, l, u, w are real for genuine curvature; they are stored in the generic
// scalar type anyway so the numeric path can track how real they came out.
// Genuine curvature blocks also satisfy the standing constraints
//
//   balance: a + b = ap + bp,     reality: v = conj(v),
//
// under which the three predicate forms below are provably equivalent as
// direct <=> reduced AND dual, and the nine coefficient groups vanish exactly
// when the direct form holds with constant m.k.

namespace curvlab {

template <class C>
struct BlockParams {
  C k{}, l{}, u{}, w{};
  C v{}, x{}, a{}, b{}, ap{}, bp{};
};

// Direct form: the sectional value is the same on every complex line.
template <class C, class IsZero>
bool constant_direct(const BlockParams<C>& m, IsZero zero) {
  return zero(m.x) && zero(m.ap + m.a) && zero(m.a + m.b) &&
         zero(m.k - m.l) && zero((m.u - m.k) + (m.w - m.k) + m.v + m.v);
}

// Reduced form: two equations shared by the direct form...
template <class C, class IsZero>
bool constant_reduced(const BlockParams<C>& m, IsZero zero) {
  return zero(m.x) && zero(m.a - m.bp) &&
         zero((m.u - m.k) + (m.w - m.l) + m.v + m.v);
}

// ...plus the dual pairing of the two Ricci-type contractions. Together with
// the reduced form this recovers the direct form (and conversely).
template <class C, class IsZero>
bool dual_pair(const BlockParams<C>& m, IsZero zero) {
  return zero(m.k - m.l) && zero((m.ap + m.b) + (m.a + m.bp));
}

// Coefficient groups of the quartic H(Z) - kc |Z|^4 in the monomials of
// (z, zbar): all nine vanish iff H is identically kc at the point.
template <class C>
std::array<C, 9> constancy_coefficients(const BlockParams<C>& m, const C& kc) {
  using std::conj;
  return {m.k - kc,
          m.l - kc,
          (m.w - kc) + (m.u - kc) + conj(m.v) + m.v,
          conj(m.x),
          m.x,
          conj(m.a) + conj(m.ap),
          m.a + m.ap,
          conj(m.b) + conj(m.bp),
          m.b + m.bp};
}

template <class C, class IsZero>
bool constancy_coefficients_vanish(const BlockParams<C>& m, const C& kc,
                                   IsZero zero) {
  for (const C& g : constancy_coefficients(m, kc))
    if (!zero(g)) return false;
  return true;
}

// Standing constraints; generators should satisfy these, and genuine
// curvature must.
template <class C, class IsZero>
bool standing_constraints(const BlockParams<C>& m, IsZero zero) {
  using std::conj;
  return zero((m.a + m.b) - (m.ap + m.bp)) && zero(m.v - conj(m.v));
}

}  // namespace curvlab
