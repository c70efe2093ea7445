#pragma once

#include <array>
#include <cmath>

#include "curvlab/core.hpp"

// Two-forms / bivectors on a 4-dimensional inner-product space.
//
// Components live in the pair basis e_a ^ e_b (a < b) of a frame, enumerated
//   0:(12) 1:(13) 2:(14) 3:(23) 4:(24) 5:(34)      (1-based labels)
// In an orthonormal frame this basis is orthonormal for the inner product
// <f,h> = (1/2) f_ij h^ij, so <F,F> = 2 for the fundamental form.
//
// Orientation convention: an adapted frame (e1, Je1, e2, Je2) is positively
// oriented (vol = e1^Je1^e2^Je2 = F^2/2), so the frame-level star below uses
// sign +1. The metric-level star takes an explicit orientation sign relating
// chart coordinates to the chosen volume form.

namespace curvlab {

inline constexpr int kPairIdx[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                       {1, 2}, {1, 3}, {2, 3}};

// pair_index(a,b): position p with sign, so e_a^e_b = sign * basis[p].
inline int pair_index(int a, int b, int& sign) {
  sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  static constexpr int lut[4][4] = {{-1, 0, 1, 2},
                                    {0, -1, 3, 4},
                                    {1, 3, -1, 5},
                                    {2, 4, 5, -1}};
  return lut[a][b];
}

using Form2d = Vec<double, 6>;
using Form2c = Vec<Complex, 6>;

template <class T>
Vec<T, 6> form_from_matrix(const Mat<T, 4>& m) {
  Vec<T, 6> f;
  for (int p = 0; p < 6; ++p) f[p] = m(kPairIdx[p][0], kPairIdx[p][1]);
  return f;
}

template <class T>
Mat<T, 4> matrix_from_form(const Vec<T, 6>& f) {
  Mat<T, 4> m{};
  for (int p = 0; p < 6; ++p) {
    m(kPairIdx[p][0], kPairIdx[p][1]) = f[p];
    m(kPairIdx[p][1], kPairIdx[p][0]) = T(0) - f[p];
  }
  return m;
}

// <f,h> = sum over a<b of components: equals (1/2) f_ij h^ij in an ON frame.
template <class T>
T form_inner(const Vec<T, 6>& f, const Vec<T, 6>& h) {
  return dot(f, h);
}

// Star in a positively oriented orthonormal frame.
template <class T>
Vec<T, 6> star_on(const Vec<T, 6>& f) {
  static constexpr int comp[6] = {5, 4, 3, 2, 1, 0};
  static constexpr double sgn[6] = {1, -1, 1, 1, -1, 1};
  Vec<T, 6> r;
  for (int p = 0; p < 6; ++p) r[p] = T(sgn[p]) * f[comp[p]];
  return r;
}

namespace detail {
inline int levi_civita4(int i, int j, int k, int l) {
  const int p[4] = {i, j, k, l};
  int sgn = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (p[a] == p[b]) return 0;
      if (p[a] > p[b]) sgn = -sgn;
    }
  return sgn;
}
}  // namespace detail

// Metric-level Hodge star on covariant two-forms in chart components:
//   (*f)_kl = (s * sqrt(det g) / 2) f^{ij} eps_{ijkl},  eps_{1234} = +1,
// where s = +1 if the chart coordinates are positively oriented for the
// chosen volume form and -1 otherwise.
inline Mat4d hodge_star(const Mat4d& f, const Mat4d& g, double orientation_sign) {
  const Mat4d gi = inverse(g);
  Mat4d fup{};  // f^{ij}
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += gi(i, k) * gi(j, l) * f(k, l);
      fup(i, j) = s;
    }
  const double scale = orientation_sign * std::sqrt(det(g)) * 0.5;
  Mat4d r{};
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      double s = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          s += fup(i, j) * detail::levi_civita4(i, j, k, l);
      r(k, l) = scale * s;
    }
  return r;
}

// ===== self-dual / anti-self-dual orthonormal bases (adapted frame) =====
//
//   s+ : F^ = (e12+e34)/sqrt2,  psi1 = (e13-e24)/sqrt2,  psi2 = (e14+e23)/sqrt2
//   s- : (e12-e34)/sqrt2,       (e13+e24)/sqrt2,         (e14-e23)/sqrt2
//
// F^ is the normalized fundamental form; psi1, psi2 span the real (2,0)+(0,2)
// part of Lambda^+.

inline const std::array<Form2d, 3>& sd_basis() {
  static const std::array<Form2d, 3> b = [] {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<Form2d, 3> v{};
    v[0][0] = r;
    v[0][5] = r;
    v[1][1] = r;
    v[1][4] = -r;
    v[2][2] = r;
    v[2][3] = r;
    return v;
  }();
  return b;
}

inline const std::array<Form2d, 3>& asd_basis() {
  static const std::array<Form2d, 3> b = [] {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<Form2d, 3> v{};
    v[0][0] = r;
    v[0][5] = -r;
    v[1][1] = r;
    v[1][4] = r;
    v[2][2] = r;
    v[2][3] = -r;
    return v;
  }();
  return b;
}

// ===== complex (1,1) bivector basis =====
//
// With z1 = (e1 - i Je1)/sqrt2, z2 = (e2 - i Je2)/sqrt2 the products
// z_a ^ zbar_b form the basis
//   zeta0 = z1^zbar1 = i e12,   zeta1 = z1^zbar2,
//   zeta2 = z2^zbar1,           zeta3 = z2^zbar2 = i e34,
// with conj(zeta0) = -zeta0, conj(zeta3) = -zeta3, conj(zeta1) = -zeta2.

inline const std::array<Form2c, 4>& zeta_basis() {
  static const std::array<Form2c, 4> b = [] {
    const Complex i(0, 1);
    std::array<Form2c, 4> v{};
    v[0][0] = i;
    v[3][5] = i;
    // zeta1 = [(e13+e24) + i(e14-e23)]/2
    v[1][1] = 0.5;
    v[1][4] = 0.5;
    v[1][2] = i * 0.5;
    v[1][3] = -i * 0.5;
    // zeta2 = [-(e13+e24) + i(e14-e23)]/2
    v[2][1] = -0.5;
    v[2][4] = -0.5;
    v[2][2] = i * 0.5;
    v[2][3] = -i * 0.5;
    return v;
  }();
  return b;
}

// Gram matrix of the zeta basis under the bilinear (no conjugation) pairing.
inline const Mat4c& zeta_gram() {
  static const Mat4c g = [] {
    Mat4c m{};
    m(0, 0) = -1;
    m(1, 2) = -1;
    m(2, 1) = -1;
    m(3, 3) = -1;
    return m;
  }();
  return g;
}

// Orthonormal-style basis for the (1,1) block:
//   xi1 = (i/sqrt2)(zeta0+zeta3) = -F^,
//   xi2 = zeta1, xi3 = zeta2,
//   xi4 = (i/sqrt2)(zeta0-zeta3) = -(e12-e34)/sqrt2.
// Column c of the matrix expresses xi_{c+1} in zeta coordinates.
inline const Mat4c& zeta_to_onb() {
  static const Mat4c p = [] {
    const Complex is = Complex(0, 1) / std::sqrt(2.0);
    Mat4c m{};
    m(0, 0) = is;
    m(3, 0) = is;
    m(1, 1) = 1;
    m(2, 2) = 1;
    m(0, 3) = is;
    m(3, 3) = -is;
    return m;
  }();
  return p;
}

inline const Mat4c& onb_gram() {
  static const Mat4c g = [] {
    Mat4c m{};
    m(0, 0) = 1;
    m(1, 2) = -1;
    m(2, 1) = -1;
    m(3, 3) = 1;
    return m;
  }();
  return g;
}

// Bilinear evaluation of a real 6x6 curvature-type form on complex bivectors.
inline Complex eval_form(const Mat6d& r6, const Form2c& u, const Form2c& v) {
  Complex s = 0;
  for (int p = 0; p < 6; ++p) {
    if (u[p] == Complex(0)) continue;
    Complex row = 0;
    for (int q = 0; q < 6; ++q) row += r6(p, q) * v[q];
    s += u[p] * row;
  }
  return s;
}

inline double eval_form(const Mat6d& r6, const Form2d& u, const Form2d& v) {
  double s = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) s += u[p] * r6(p, q) * v[q];
  return s;
}

// M[i][j] = R(zeta_i, zeta_j), the (1,1) x (1,1) block of a curvature form in
// the zeta basis (complex-bilinear in both slots).
inline Mat4c block11_matrix(const Mat6d& r6) {
  const auto& z = zeta_basis();
  Mat4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = eval_form(r6, z[i], z[j]);
  return m;
}

// Basis change zeta -> xi: N = P^T M P (bilinear form transformation).
inline Mat4c change_basis_11(const Mat4c& m) {
  const Mat4c& p = zeta_to_onb();
  return p.transposed() * m * p;
}

// ===== Hermitian 2x2 representation of real (1,1)-forms =====
//
// A real (1,1)-form phi is encoded by the Hermitian matrix phi_{a bbar}
// normalized so the fundamental form F has matrix I (hence trace(phi) is the
// contraction Lambda(phi)). The star on (1,1)-forms is
//   *phi = Lambda(phi) F - phi.
using Herm2 = Mat<Complex, 2>;

inline Herm2 star_11(const Herm2& phi) {
  Herm2 r = -phi;
  const Complex t = phi.trace();
  r(0, 0) += t;
  r(1, 1) += t;
  return r;
}

inline double herm2_norm(const Herm2& phi) { return frobenius_norm(phi); }

}  // namespace curvlab
