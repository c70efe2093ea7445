#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>

// Exact scalars for the algebraic oracle: rationals and Gaussian rationals.
// The oracle never touches floating point except through the explicit
// rounding bridge at the bottom, which snaps a double to the nearest
// multiple of 1e-9 so near-zero numerical noise becomes an exact zero.

namespace curvlab {

using Rat = boost::rational<long long>;

struct GRat {
  Rat re{0}, im{0};

  GRat() = default;
  GRat(int n) : re(n) {}  // NOLINT: implicit by design, mirrors complex<T>
  GRat(const Rat& r) : re(r) {}
  GRat(const Rat& r, const Rat& i) : re(r), im(i) {}

  friend GRat operator+(const GRat& p, const GRat& q) {
    return {p.re + q.re, p.im + q.im};
  }
  friend GRat operator-(const GRat& p, const GRat& q) {
    return {p.re - q.re, p.im - q.im};
  }
  friend GRat operator*(const GRat& p, const GRat& q) {
    return {p.re * q.re - p.im * q.im, p.re * q.im + p.im * q.re};
  }
  GRat operator-() const { return {-re, -im}; }
  friend bool operator==(const GRat& p, const GRat& q) {
    return p.re == q.re && p.im == q.im;
  }
  friend bool operator!=(const GRat& p, const GRat& q) { return !(p == q); }
  bool is_zero() const { return re.numerator() == 0 && im.numerator() == 0; }
};

inline GRat conj(const GRat& z) { return {z.re, -z.im}; }

struct ExactZero {
  bool operator()(const GRat& z) const { return z.is_zero(); }
};

// Round to the nearest multiple of 1e-9; |x| must stay below ~9e9.
inline Rat rat_from_rounded(double x) {
  return Rat(std::llround(x * 1e9), 1000000000LL);
}

inline double rat_to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace curvlab
