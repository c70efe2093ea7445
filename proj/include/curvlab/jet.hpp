#pragma once

#include <array>
#include <cmath>

#include "curvlab/core.hpp"

// Forward-mode jets in the four chart coordinates.
//
// Jet2 carries value + gradient + full symmetric Hessian and is the scalar
// type for metric and almost-complex-structure fields: everything the
// curvature assembly needs downstream (Christoffel symbols and the gauge
// potential to first order) falls out of ring arithmetic on these.
// Jet1 is the truncation used for connection coefficients.

namespace curvlab {

struct Jet1 {
  double v = 0;
  std::array<double, 4> d{};

  Jet1() = default;
  Jet1(double value) : v(value) {}

  static Jet1 variable(int i, double x) {
    Jet1 j(x);
    j.d[static_cast<std::size_t>(i)] = 1.0;
    return j;
  }

  friend Jet1 operator+(Jet1 p, const Jet1& q) {
    p.v += q.v;
    for (int i = 0; i < 4; ++i) p.d[i] += q.d[i];
    return p;
  }
  friend Jet1 operator-(Jet1 p, const Jet1& q) {
    p.v -= q.v;
    for (int i = 0; i < 4; ++i) p.d[i] -= q.d[i];
    return p;
  }
  friend Jet1 operator*(const Jet1& p, const Jet1& q) {
    Jet1 r(p.v * q.v);
    for (int i = 0; i < 4; ++i) r.d[i] = p.d[i] * q.v + p.v * q.d[i];
    return r;
  }
  friend Jet1 operator/(const Jet1& p, const Jet1& q) {
    Jet1 r(p.v / q.v);
    const double iq = 1.0 / q.v;
    for (int i = 0; i < 4; ++i) r.d[i] = (p.d[i] - r.v * q.d[i]) * iq;
    return r;
  }
  Jet1 operator-() const {
    Jet1 r(-v);
    for (int i = 0; i < 4; ++i) r.d[i] = -d[i];
    return r;
  }
};

struct Jet2 {
  double v = 0;
  std::array<double, 4> d{};
  Mat<double, 4> h{};  // kept symmetric by construction

  Jet2() = default;
  Jet2(double value) : v(value) {}

  static Jet2 variable(int i, double x) {
    Jet2 j(x);
    j.d[static_cast<std::size_t>(i)] = 1.0;
    return j;
  }

  friend Jet2 operator+(Jet2 p, const Jet2& q) {
    p.v += q.v;
    for (int i = 0; i < 4; ++i) p.d[i] += q.d[i];
    p.h = p.h + q.h;
    return p;
  }
  friend Jet2 operator-(Jet2 p, const Jet2& q) {
    p.v -= q.v;
    for (int i = 0; i < 4; ++i) p.d[i] -= q.d[i];
    p.h = p.h - q.h;
    return p;
  }
  friend Jet2 operator*(const Jet2& p, const Jet2& q) {
    Jet2 r(p.v * q.v);
    for (int i = 0; i < 4; ++i) r.d[i] = p.d[i] * q.v + p.v * q.d[i];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        r.h(i, j) = p.h(i, j) * q.v + p.v * q.h(i, j) + p.d[i] * q.d[j] +
                    p.d[j] * q.d[i];
    return r;
  }
  friend Jet2 operator/(const Jet2& p, const Jet2& q) { return p * recip(q); }
  Jet2 operator-() const {
    Jet2 r(-v);
    for (int i = 0; i < 4; ++i) r.d[i] = -d[i];
    r.h = -h;
    return r;
  }

  // f(u) for scalar f with derivatives f1 = f'(u.v), f2 = f''(u.v).
  static Jet2 compose(const Jet2& u, double f0, double f1, double f2) {
    Jet2 r(f0);
    for (int i = 0; i < 4; ++i) r.d[i] = f1 * u.d[i];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        r.h(i, j) = f1 * u.h(i, j) + f2 * u.d[i] * u.d[j];
    return r;
  }

  friend Jet2 recip(const Jet2& u) {
    const double iv = 1.0 / u.v;
    return compose(u, iv, -iv * iv, 2.0 * iv * iv * iv);
  }
};

inline Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return Jet2::compose(u, s, c, -s);
}
inline Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return Jet2::compose(u, c, -s, -c);
}
inline Jet2 tan(const Jet2& u) {
  const double t = std::tan(u.v), sec2 = 1.0 + t * t;
  return Jet2::compose(u, t, sec2, 2.0 * t * sec2);
}
inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.v);
  return Jet2::compose(u, e, e, e);
}
inline Jet2 log(const Jet2& u) {
  const double iv = 1.0 / u.v;
  return Jet2::compose(u, std::log(u.v), iv, -iv * iv);
}
inline Jet2 sqrt(const Jet2& u) {
  const double s = std::sqrt(u.v);
  return Jet2::compose(u, s, 0.5 / s, -0.25 / (s * u.v));
}
inline Jet2 sinh(const Jet2& u) {
  const double s = std::sinh(u.v), c = std::cosh(u.v);
  return Jet2::compose(u, s, c, s);
}
inline Jet2 cosh(const Jet2& u) {
  const double s = std::sinh(u.v), c = std::cosh(u.v);
  return Jet2::compose(u, c, s, c);
}
inline Jet2 tanh(const Jet2& u) {
  const double t = std::tanh(u.v), sech2 = 1.0 - t * t;
  return Jet2::compose(u, t, sech2, -2.0 * t * sech2);
}
inline Jet2 atan(const Jet2& u) {
  const double w = 1.0 / (1.0 + u.v * u.v);
  return Jet2::compose(u, std::atan(u.v), w, -2.0 * u.v * w * w);
}

template <class J>
J pow_int(J base, long long n) {
  if (n < 0) return J(1) / pow_int(base, -n);
  J r(1);
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

// Truncations and derivative extraction.
inline Jet1 jet1_of(const Jet2& u) {
  Jet1 r(u.v);
  r.d = u.d;
  return r;
}

// The i-th partial derivative of a Jet2 scalar, as a Jet1 (its gradient is the
// i-th Hessian row; symmetry of mixed partials makes the row choice immaterial).
inline Jet1 partial(const Jet2& u, int i) {
  Jet1 r(u.d[static_cast<std::size_t>(i)]);
  for (int j = 0; j < 4; ++j) r.d[j] = u.h(i, j);
  return r;
}

template <int R, int C>
Mat<double, R, C> values_of(const Mat<Jet2, R, C>& m) {
  Mat<double, R, C> r;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) r(i, j) = m(i, j).v;
  return r;
}

template <int R, int C>
Mat<double, R, C> values_of(const Mat<Jet1, R, C>& m) {
  Mat<double, R, C> r;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) r(i, j) = m(i, j).v;
  return r;
}

template <int R, int C>
Mat<double, R, C> partials_of(const Mat<Jet1, R, C>& m, int k) {
  Mat<double, R, C> r;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) r(i, j) = m(i, j).d[static_cast<std::size_t>(k)];
  return r;
}

}  // namespace curvlab
