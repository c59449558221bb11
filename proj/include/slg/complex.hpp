// Complex arithmetic over the multiprecision Real type, plus polar points with
// an unwound argument (needed to address sheets beyond the principal one).
#pragma once

#include "slg/errors.hpp"
#include "slg/precision.hpp"

#include <ostream>
#include <string>
#include <type_traits>

namespace slg {

struct HPComplex {
  Real re;
  Real im;

  HPComplex() : re(0), im(0) {}
  HPComplex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(implicit)
  HPComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  template <class T>
    requires std::is_arithmetic_v<T>
  HPComplex(T r) : re(r), im(0) {}  // NOLINT(implicit)
  HPComplex(double r, double i) : re(r), im(i) {}

  static HPComplex i_unit() { return HPComplex(Real(0), Real(1)); }

  HPComplex& operator+=(const HPComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  HPComplex& operator-=(const HPComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  HPComplex& operator*=(const HPComplex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  HPComplex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  HPComplex& operator/=(const HPComplex& o) {
    // Smith's algorithm avoids spurious overflow in |o|^2.
    if (abs(o.re) >= abs(o.im)) {
      if (o.re == 0) throw DomainError("complex division by zero");
      Real r = o.im / o.re;
      Real d = o.re + o.im * r;
      Real nr = (re + im * r) / d;
      im = (im - re * r) / d;
      re = std::move(nr);
    } else {
      Real r = o.re / o.im;
      Real d = o.re * r + o.im;
      Real nr = (re * r + im) / d;
      im = (im * r - re) / d;
      re = std::move(nr);
    }
    return *this;
  }
  HPComplex& operator/=(const Real& s) {
    re /= s;
    im /= s;
    return *this;
  }

  friend HPComplex operator+(HPComplex a, const HPComplex& b) { return a += b; }
  friend HPComplex operator-(HPComplex a, const HPComplex& b) { return a -= b; }
  friend HPComplex operator*(HPComplex a, const HPComplex& b) { return a *= b; }
  friend HPComplex operator*(HPComplex a, const Real& s) { return a *= s; }
  friend HPComplex operator*(const Real& s, HPComplex a) { return a *= s; }
  friend HPComplex operator/(HPComplex a, const HPComplex& b) { return a /= b; }
  friend HPComplex operator/(HPComplex a, const Real& s) { return a /= s; }
  template <class T>
    requires std::is_arithmetic_v<T>
  friend HPComplex operator*(HPComplex a, T s) {
    return a *= Real(s);
  }
  template <class T>
    requires std::is_arithmetic_v<T>
  friend HPComplex operator*(T s, HPComplex a) {
    return a *= Real(s);
  }
  template <class T>
    requires std::is_arithmetic_v<T>
  friend HPComplex operator/(HPComplex a, T s) {
    return a /= Real(s);
  }
  friend HPComplex operator-(HPComplex a) {
    a.re = -a.re;
    a.im = -a.im;
    return a;
  }
  friend bool operator==(const HPComplex& a, const HPComplex& b) { return a.re == b.re && a.im == b.im; }

  friend std::ostream& operator<<(std::ostream& os, const HPComplex& z) {
    return os << "(" << z.re << ", " << z.im << ")";
  }
};

inline HPComplex conj(const HPComplex& z) { return {z.re, -z.im}; }
inline Real norm(const HPComplex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const HPComplex& z) { return hypot(z.re, z.im); }
inline bool is_finite(const HPComplex& z) { return is_finite(z.re) && is_finite(z.im); }

/// Principal argument in (-pi, pi]; a signed zero imaginary part is treated as +0.
inline Real arg(const HPComplex& z) {
  if (z.im == 0) return z.re < 0 ? pi() : Real(0);
  return atan2(z.im, z.re);
}

inline HPComplex polar(const Real& r, const Real& theta) {
  Real s, c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), theta.backend().data(), MPFR_RNDN);
  return {r * c, r * s};
}

/// e^{i theta}
inline HPComplex expi(const Real& theta) { return polar(Real(1), theta); }

inline HPComplex exp(const HPComplex& z) { return polar(exp(z.re), z.im); }

/// Principal logarithm; raises DomainError at zero.
inline HPComplex log(const HPComplex& z) {
  if (z.re == 0 && z.im == 0) throw DomainError("logarithm of zero");
  return {log(abs(z)), arg(z)};
}

inline HPComplex sqrt(const HPComplex& z) {
  if (z.re == 0 && z.im == 0) return {};
  Real m = abs(z);
  Real r = sqrt((m + abs(z.re)) / 2);
  if (z.re >= 0) return {r, z.im / (2 * r)};
  Real i = z.im < 0 ? -r : r;
  return {abs(z.im) / (2 * r), i};
}

/// Principal power z^w = exp(w Log z).
inline HPComplex pow(const HPComplex& z, const HPComplex& w) {
  if (z.re == 0 && z.im == 0) {
    if (w.re > 0) return {};
    throw DomainError("zero raised to a non-positive power");
  }
  return exp(w * log(z));
}

/// Integer power by repeated squaring.
inline HPComplex pow(HPComplex z, long n) {
  if (n < 0) return HPComplex(1) / pow(std::move(z), -n);
  HPComplex r(1);
  while (n) {
    if (n & 1) r *= z;
    n >>= 1;
    if (n) z *= z;
  }
  return r;
}

inline HPComplex sin(const HPComplex& z) {
  Real s, c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), z.re.backend().data(), MPFR_RNDN);
  return {s * cosh(z.im), c * sinh(z.im)};
}

inline HPComplex cos(const HPComplex& z) {
  Real s, c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), z.re.backend().data(), MPFR_RNDN);
  return {c * cosh(z.im), -(s * sinh(z.im))};
}

inline HPComplex ensure_finite(HPComplex z, const char* where) {
  if (!is_finite(z)) throw OverflowError(std::string("non-finite value in ") + where);
  return z;
}

inline HPComplex promoted(const HPComplex& z) { return {promoted(z.re), promoted(z.im)}; }

inline HPComplex rounded(const HPComplex& z, int digits) { return {rounded(z.re, digits), rounded(z.im, digits)}; }

/// log10 of |z| in double precision; -inf at zero.
inline double log10_abs(const HPComplex& z) {
  double a = log10_abs(z.re), b = log10_abs(z.im);
  double m = std::max(a, b);
  if (std::isinf(m)) return m;
  return m + 0.5 * std::log10(std::pow(10.0, 2 * (a - m)) + std::pow(10.0, 2 * (b - m)));
}

/// A point on the Riemann surface of the logarithm: modulus and unwound phase.
struct PolarPoint {
  Real modulus;
  Real theta;

  PolarPoint() : modulus(1), theta(0) {}
  PolarPoint(Real r, Real t) : modulus(std::move(r)), theta(std::move(t)) {
    if (!(modulus > 0)) throw DomainError("PolarPoint: modulus must be positive");
  }

  /// Principal-sheet point of a nonzero complex number.
  static PolarPoint from(const HPComplex& z) {
    if (z.re == 0 && z.im == 0) throw DomainError("PolarPoint of zero");
    return {abs(z), arg(z)};
  }

  HPComplex to_cartesian() const { return polar(modulus, theta); }
  PolarPoint conjugate() const { return {modulus, -theta}; }
  PolarPoint rotated(const Real& angle) const { return {modulus, theta + angle}; }

  /// ln z on this sheet.
  HPComplex log() const { return {bmp::log(modulus), theta}; }
};

/// ln|z| + i(Arg z + 2 pi k).
inline HPComplex log_branch(const HPComplex& z, long k) {
  HPComplex l = log(z);
  l.im += 2 * pi() * k;
  return l;
}

/// z^a using the unwound phase: exp(a (ln r + i theta)).
inline HPComplex pow_polar(const PolarPoint& z, const HPComplex& a) { return exp(a * z.log()); }

/// Parses "re,im" or a bare real.
inline HPComplex parse_complex(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_real(text), Real(0)};
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

}  // namespace slg
