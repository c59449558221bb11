// Working-precision bookkeeping for the multiprecision numerics.
//
// All numerics are carried in `Real`, a variable-precision MPFR float.  A
// PrecisionContext records how many decimal digits the caller asked for and
// how many are actually carried (target + guard).  Computations establish the
// precision with a ScopedPrecision guard; inside the scope every Real created
// and every operation carries the working precision.
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slg {

namespace bmp = boost::multiprecision;

using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

class PrecisionContext {
 public:
  /// Guard digits default to max(15, ceil(0.2 * target)).
  explicit PrecisionContext(int target_digits)
      : PrecisionContext(target_digits, default_guard(target_digits)) {}

  PrecisionContext(int target_digits, int guard_digits)
      : target_(target_digits), guard_(guard_digits) {
    if (target_digits < 1) {
      throw std::invalid_argument("PrecisionContext: target digits must be positive");
    }
    if (guard_digits < 10) {
      throw std::invalid_argument("PrecisionContext: at least 10 guard digits are required");
    }
  }

  static int default_guard(int target_digits) {
    return std::max(15, static_cast<int>(std::ceil(0.2 * target_digits)));
  }

  int target_digits() const noexcept { return target_; }
  int guard_digits() const noexcept { return guard_; }
  int working_digits() const noexcept { return target_ + guard_; }

  /// Same target, `extra` additional guard digits.
  PrecisionContext boosted(int extra) const { return PrecisionContext(target_, guard_ + extra); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int target_;
  int guard_;
};

/// Sets the default precision of newly created Reals for the lifetime of the
/// guard and restores the previous value on exit.  Inside the guard every
// operation, including copies, runs at the guard's precision regardless of
// the precision its operands were created with.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int digits) : previous_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(std::max(digits, 10)));
  }
  explicit ScopedPrecision(const PrecisionContext& ctx) : ScopedPrecision(ctx.working_digits()) {}
  ~ScopedPrecision() { Real::default_precision(previous_); }

  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_;
};

inline int current_digits() { return static_cast<int>(Real::default_precision()); }

inline Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real euler_gamma() {
  Real r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real ln2() {
  Real r;
  mpfr_const_log2(r.backend().data(), MPFR_RNDN);
  return r;
}

/// 10^e at the current precision.
inline Real pow10(int e) {
  Real r;
  mpfr_ui_pow_ui(r.backend().data(), 10u, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  return e < 0 ? Real(1) / r : r;
}

inline bool is_finite(const Real& x) { return mpfr_number_p(x.backend().data()) != 0; }

/// Parses a decimal string at the current precision.
inline Real parse_real(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
}

/// Approximate log10 |x| in double; -inf for zero.
inline double log10_abs(const Real& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, x.backend().data(), MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

/// Copy of x rounded to `digits` decimal digits.
inline Real rounded(const Real& x, int digits) {
  Real r;
  r.precision(static_cast<unsigned>(digits));
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

/// Copy of x carried at the current default precision.  Some operations keep
/// the precision of their operand, so values entering a raised-precision
/// scope are promoted first.
inline Real promoted(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace slg
