#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pdmv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Real50 = boost::multiprecision::cpp_bin_float_50;

inline Rat make_rat(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rat(Int(num), Int(den));
}

inline std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Gaussian rational a + b*i with exact components.  The engine's exact
/// scalar field: every constant in an expression tree is one of these.
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long long n) : re(make_rat(n)) {}

  static GaussRat zero() { return GaussRat(); }
  static GaussRat one() { return GaussRat(1); }
  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return im == 0 && re == 1; }

  GaussRat operator-() const { return {-re, -im}; }
  GaussRat conj() const { return {re, -im}; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRat inverse() const {
    Rat n = re * re + im * im;
    if (n == 0) throw std::domain_error("division by zero (gaussian rational)");
    return {re / n, -im / n};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    return a * b.inverse();
  }
  GaussRat& operator+=(const GaussRat& o) { *this = *this + o; return *this; }
  GaussRat& operator-=(const GaussRat& o) { *this = *this - o; return *this; }
  GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  GaussRat pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussRat acc = one(), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// L1 magnitude |re|+|im|; exact, used only for reporting flagged values.
  Rat mag1() const {
    Rat a = re < 0 ? Rat(-re) : re;
    Rat b = im < 0 ? Rat(-im) : im;
    return a + b;
  }
};

inline std::string to_string(const GaussRat& g) {
  if (g.im == 0) return rat_to_string(g.re);
  std::ostringstream os;
  if (g.re != 0) os << g.re << (g.im > 0 ? "+" : "");
  os << g.im << "*i";
  return os.str();
}

/// Complex scalar over 50-decimal-digit binary floats.  Self-contained so the
/// transcendental branch choices (principal everywhere) are pinned here.
struct Complex50 {
  Real50 re;
  Real50 im;

  Complex50() : re(0), im(0) {}
  Complex50(Real50 r) : re(std::move(r)), im(0) {}
  Complex50(Real50 r, Real50 i) : re(std::move(r)), im(std::move(i)) {}
  Complex50(long long n) : re(n), im(0) {}

  static Complex50 zero() { return Complex50(); }
  static Complex50 one() { return Complex50(1); }

  static Complex50 from(const GaussRat& g) {
    return {static_cast<Real50>(g.re), static_cast<Real50>(g.im)};
  }
  static Complex50 from(const Rat& q) { return {static_cast<Real50>(q), Real50(0)}; }

  bool is_zero() const { return re == 0 && im == 0; }

  Complex50 operator-() const { return {-re, -im}; }

  friend Complex50 operator+(const Complex50& a, const Complex50& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex50 operator-(const Complex50& a, const Complex50& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex50 operator*(const Complex50& a, const Complex50& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Complex50 inverse() const {
    Real50 n = re * re + im * im;
    if (n == 0) throw std::domain_error("division by zero (complex)");
    return {re / n, -im / n};
  }
  friend Complex50 operator/(const Complex50& a, const Complex50& b) {
    return a * b.inverse();
  }
  Complex50& operator+=(const Complex50& o) { *this = *this + o; return *this; }
  Complex50& operator-=(const Complex50& o) { *this = *this - o; return *this; }
  Complex50& operator*=(const Complex50& o) { *this = *this * o; return *this; }

  Real50 abs2() const { return re * re + im * im; }
  Real50 abs() const { return sqrt(abs2()); }

  Complex50 pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Complex50 acc = one(), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
};

inline Complex50 sqrt(const Complex50& z) {
  Real50 m = z.abs();
  if (m == 0) return Complex50::zero();
  // principal branch: Re(sqrt) >= 0
  Real50 u = sqrt((m + z.re) / 2);
  Real50 v = sqrt((m - z.re) / 2);
  if (z.im < 0) v = -v;
  return {u, v};
}

inline Complex50 log(const Complex50& z) {
  Real50 m2 = z.abs2();
  if (m2 == 0) throw std::domain_error("log of zero");
  return {log(m2) / 2, atan2(z.im, z.re)};
}

inline Complex50 atan(const Complex50& z) {
  // atan z = (i/2) * ln((1-iz)/(1+iz)), principal branch
  Complex50 iz{-z.im, z.re};
  Complex50 w = log((Complex50::one() - iz) / (Complex50::one() + iz));
  return {-w.im / 2, w.re / 2};
}

inline Complex50 atanh(const Complex50& z) {
  Complex50 w = log((Complex50::one() + z) / (Complex50::one() - z));
  return {w.re / 2, w.im / 2};
}

inline std::string to_string(const Complex50& z, int digits = 30) {
  std::ostringstream os;
  os << z.re.str(digits, std::ios_base::scientific);
  if (z.im != 0) os << (z.im > 0 ? "+" : "") << z.im.str(digits, std::ios_base::scientific) << "i";
  return os.str();
}

enum class Backend { Auto, Exact, Float };

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Float: return "float";
    default: return "auto";
  }
}

}  // namespace pdmv
