#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>

// Small fixed-size dense linear algebra over an arbitrary commutative scalar.
// The scalar T must support +, -, *, /, T(int) and default-construct to zero.
// Used with double, std::complex<double>, second-order jets and exact rationals.

namespace curvlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

template <class T, int N>
struct Vec {
  std::array<T, N> a{};

  T& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
  const T& operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

  friend Vec operator+(Vec p, const Vec& q) {
    for (int i = 0; i < N; ++i) p[i] = p[i] + q[i];
    return p;
  }
  friend Vec operator-(Vec p, const Vec& q) {
    for (int i = 0; i < N; ++i) p[i] = p[i] - q[i];
    return p;
  }
  friend Vec operator*(const T& s, Vec p) {
    for (int i = 0; i < N; ++i) p[i] = s * p[i];
    return p;
  }
  Vec operator-() const {
    Vec r;
    for (int i = 0; i < N; ++i) r[i] = T(0) - a[static_cast<std::size_t>(i)];
    return r;
  }
};

// Plain bilinear dot, no conjugation; complex pairings are explicit call sites.
template <class T, int N>
T dot(const Vec<T, N>& p, const Vec<T, N>& q) {
  T s = T(0);
  for (int i = 0; i < N; ++i) s = s + p[i] * q[i];
  return s;
}

template <class T, int R, int C = R>
struct Mat {
  std::array<T, static_cast<std::size_t>(R) * C> a{};

  static constexpr int rows = R;
  static constexpr int cols = C;

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * C + j]; }
  const T& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * C + j];
  }

  static Mat identity()
    requires(R == C)
  {
    Mat m{};
    for (int i = 0; i < R; ++i) m(i, i) = T(1);
    return m;
  }

  Mat<T, C, R> transposed() const {
    Mat<T, C, R> t;
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const
    requires(R == C)
  {
    T s = T(0);
    for (int i = 0; i < R; ++i) s = s + (*this)(i, i);
    return s;
  }

  friend Mat operator+(Mat p, const Mat& q) {
    for (std::size_t i = 0; i < p.a.size(); ++i) p.a[i] = p.a[i] + q.a[i];
    return p;
  }
  friend Mat operator-(Mat p, const Mat& q) {
    for (std::size_t i = 0; i < p.a.size(); ++i) p.a[i] = p.a[i] - q.a[i];
    return p;
  }
  friend Mat operator*(const T& s, Mat p) {
    for (auto& e : p.a) e = s * e;
    return p;
  }
  Mat operator-() const {
    Mat r;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = T(0) - a[i];
    return r;
  }
};

template <class T, int R, int K, int C>
Mat<T, R, C> operator*(const Mat<T, R, K>& p, const Mat<T, K, C>& q) {
  Mat<T, R, C> r{};
  for (int i = 0; i < R; ++i)
    for (int k = 0; k < K; ++k) {
      const T& pik = p(i, k);
      for (int j = 0; j < C; ++j) r(i, j) = r(i, j) + pik * q(k, j);
    }
  return r;
}

template <class T, int R, int C>
Vec<T, R> operator*(const Mat<T, R, C>& m, const Vec<T, C>& v) {
  Vec<T, R> r{};
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) r[i] = r[i] + m(i, j) * v[j];
  return r;
}

namespace detail {

template <class T, int N>
Mat<T, N - 1, N - 1> minor_of(const Mat<T, N, N>& m, int di, int dj) {
  Mat<T, N - 1, N - 1> s;
  for (int i = 0, r = 0; i < N; ++i) {
    if (i == di) continue;
    for (int j = 0, c = 0; j < N; ++j) {
      if (j == dj) continue;
      s(r, c) = m(i, j);
      ++c;
    }
    ++r;
  }
  return s;
}

}  // namespace detail

template <class T, int N>
T det(const Mat<T, N, N>& m) {
  if constexpr (N == 1) {
    return m(0, 0);
  } else {
    T s = T(0);
    for (int j = 0; j < N; ++j) {
      T c = m(0, j) * det(detail::minor_of(m, 0, j));
      s = (j % 2 == 0) ? s + c : s - c;
    }
    return s;
  }
}

// Adjugate inverse: only ring operations plus one division per entry, so this
// works over jets and rationals, not just floating point.
template <class T, int N>
Mat<T, N, N> inverse(const Mat<T, N, N>& m) {
  const T d = det(m);
  Mat<T, N, N> inv;
  if constexpr (N == 1) {
    inv(0, 0) = T(1) / d;
    return inv;
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        T c = det(detail::minor_of(m, j, i));
        if ((i + j) % 2 != 0) c = T(0) - c;
        inv(i, j) = c / d;
      }
    return inv;
  }
}

using Vec4d = Vec<double, 4>;
using Mat4d = Mat<double, 4>;
using Mat4c = Mat<Complex, 4>;
using Mat6d = Mat<double, 6>;

inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const Complex& z) { return std::abs(z); }

template <class T, int R, int C>
double max_abs(const Mat<T, R, C>& m) {
  double r = 0;
  for (const auto& e : m.a) r = std::max(r, abs_of(e));
  return r;
}

template <class T, int R, int C>
double frobenius_norm_sq(const Mat<T, R, C>& m) {
  double s = 0;
  for (const auto& e : m.a) {
    const double v = abs_of(e);
    s += v * v;
  }
  return s;
}

template <class T, int R, int C>
double frobenius_norm(const Mat<T, R, C>& m) {
  return std::sqrt(frobenius_norm_sq(m));
}

template <class T, int N>
double max_abs(const Vec<T, N>& v) {
  double r = 0;
  for (int i = 0; i < N; ++i) r = std::max(r, abs_of(v[i]));
  return r;
}

}  // namespace curvlab
