// Special functions needed by the Stirling machinery.
#pragma once

#include "slg/complex.hpp"
#include "slg/errors.hpp"
#include "slg/precision.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace slg {

using Rational = bmp::mpq_rational;
using BigInt = bmp::mpz_int;

inline Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

/// Largest k for which B_{2k} is held as an exact rational.
inline constexpr long kExactBernoulliLimit = 512;

namespace detail {

/// Exact B_{2k}, k = 1..K, from the tangent numbers (integer-only recurrence).
inline std::vector<Rational> bernoulli_table(long K) {
  std::vector<BigInt> T(K + 1);
  T[1] = 1;
  for (long k = 2; k <= K; ++k) T[k] = (k - 1) * T[k - 1];
  for (long k = 2; k <= K; ++k) {
    for (long j = k; j <= K; ++j) T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j];
  }
  std::vector<Rational> B(K + 1);
  for (long k = 1; k <= K; ++k) {
    BigInt p4 = BigInt(1) << (2 * k);
    Rational b(BigInt(2 * k) * T[k], p4 * (p4 - 1));
    B[k] = (k % 2 == 1) ? b : Rational(-b);
  }
  return B;
}

class BernoulliCache {
 public:
  static BernoulliCache& instance() {
    static BernoulliCache c;
    return c;
  }

  Rational get(long k) {
    std::lock_guard<std::mutex> lock(mu_);
    if (k >= static_cast<long>(table_.size())) {
      long K = std::min(kExactBernoulliLimit, std::max<long>(64, 2 * k));
      table_ = bernoulli_table(K);
    }
    return table_[k];
  }

 private:
  std::mutex mu_;
  std::vector<Rational> table_;
};

}  // namespace detail

/// Exact B_{2k} for 1 <= k <= 512.
inline Rational bernoulli_even_exact(long k) {
  if (k < 1 || k > kExactBernoulliLimit) throw std::invalid_argument("bernoulli_even_exact: k out of range");
  return detail::BernoulliCache::instance().get(k);
}

inline Real zeta_real_gt1(long s);
inline HPComplex lngamma_principal(const HPComplex& z);

/// B_{2k} at the current precision.
inline Real bernoulli_even(long k) {
  if (k < 1) throw std::invalid_argument("bernoulli_even: k must be positive");
  if (k <= kExactBernoulliLimit) return to_real(bernoulli_even_exact(k));
  // B_{2k} = (-1)^{k-1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
  Real lf = lgamma(Real(2 * k + 1)) - 2 * k * log(2 * pi());
  Real v = 2 * exp(lf) * zeta_real_gt1(2 * k);
  return (k % 2 == 1) ? v : Real(-v);
}

namespace detail {

/// B_{2k} and B_{2k}/(2k)! as Reals, cached per precision (exact range only).
struct RealBernoulliRow {
  std::vector<Real> b, b_over_fact;
};

inline const RealBernoulliRow& real_bernoulli_row(long K) {
  thread_local std::map<int, RealBernoulliRow> cache;
  RealBernoulliRow& row = cache[current_digits()];
  if (static_cast<long>(row.b.size()) <= K) {
    long n = std::min(kExactBernoulliLimit, std::max<long>(2 * K, 64));
    row.b.assign(1, Real(1));
    row.b_over_fact.assign(1, Real(1));
    Real fact = 1;
    for (long k = 1; k <= n; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      row.b.push_back(to_real(bernoulli_even_exact(k)));
      row.b_over_fact.push_back(row.b.back() / fact);
    }
  }
  return row;
}

/// B_{2k} at the current precision, through the cache where possible.
inline Real bernoulli_fast(long k) {
  if (k > kExactBernoulliLimit) return bernoulli_even(k);
  return real_bernoulli_row(k).b[k];
}

/// B_{2k}/(2k)! at the current precision.
inline Real bernoulli_over_factorial(long k) {
  if (k > kExactBernoulliLimit) return bernoulli_even(k) / exp(lgamma(Real(2 * k + 1)));
  return real_bernoulli_row(k).b_over_fact[k];
}

}  // namespace detail

inline Real bernoulli_even(long k, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return bernoulli_even(k);
}

/// c_k(1) = (-1)^k 2^{2k} B_{2k} / (2k)!, exactly.
inline Rational cosecant_poly_unity_exact(long k) {
  BigInt f = 1;
  for (long j = 2; j <= 2 * k; ++j) f *= j;
  Rational c = Rational(BigInt(1) << (2 * k), f) * bernoulli_even_exact(k);
  return (k % 2 == 0) ? c : Rational(-c);
}

inline Real cosecant_poly_unity(long k) {
  if (k < 1) throw std::invalid_argument("cosecant_poly_unity: k must be positive");
  if (k <= kExactBernoulliLimit) return to_real(cosecant_poly_unity_exact(k));
  Real v = bernoulli_even(k) * exp(2 * k * ln2() - lgamma(Real(2 * k + 1)));
  return (k % 2 == 0) ? v : Real(-v);
}

inline Real cosecant_poly_unity(long k, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return cosecant_poly_unity(k);
}

// ---------------------------------------------------------------------------
// Zeta functions

namespace detail {

/// Euler-Maclaurin remainder sum_{n>=0} (x+n)^{-s} from the point x on:
/// x^{1-s}/(s-1) + x^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1},
/// summed until a term drops below eps_abs (or below eps_rel times the sum).
inline HPComplex em_tail(const HPComplex& s, const Real& x, const Real& eps_abs, const Real& eps_rel, long max_terms) {
  const HPComplex xs = exp(-s * HPComplex(log(x)));  // x^{-s}
  HPComplex sum = xs * x / (s - HPComplex(1));
  sum += xs / 2;
  HPComplex rising = s;  // (s)_{2j-1}
  HPComplex xpow = xs / x;
  const Real inv_x2 = 1 / (x * x);
  for (long j = 1;; ++j) {
    HPComplex term = rising * xpow * bernoulli_over_factorial(j);
    sum += term;
    Real a = abs(term);
    if (a <= eps_abs || a <= eps_rel * abs(sum) || j > max_terms) break;
    rising *= (s + HPComplex(2 * j - 1)) * (s + HPComplex(2 * j));
    xpow *= inv_x2;
  }
  return sum;
}

/// Number of Euler-Maclaurin terms needed at x for an absolute error
/// 10^{-target} (log10 units), or -1 if the terms stop decreasing first.
inline long em_terms_needed(double sigma, double t, double x, double target) {
  const double l10 = std::log(10.0);
  double lt = std::log(std::hypot(sigma, t)) - (sigma + 1) * std::log(x) - std::log(12.0);
  for (long j = 1; j < 2000; ++j) {
    if (lt / l10 < -target) return j;
    double r = std::log(std::hypot(sigma + 2 * j - 1, t)) + std::log(std::hypot(sigma + 2 * j, t)) -
               2 * std::log(2 * M_PI * x);
    if (r >= 0) return -1;
    lt += r;
  }
  return -1;
}

}  // namespace detail

/// Hurwitz zeta(s, a) for a > 0 by Euler-Maclaurin summation; s != 1.
inline HPComplex hurwitz_zeta(const HPComplex& s, const Real& a) {
  if (s.re == 1 && s.im == 0) throw DomainError("zeta: pole at s = 1");
  if (!(a > 0)) throw std::invalid_argument("hurwitz_zeta: a must be positive");
  const int digits = current_digits();
  // EM terms ~ (|s| + 2j) / (2 pi x) per step; keep the ratio below 1/4.
  const long K = static_cast<long>(std::ceil((digits + 5) / (2 * std::log10(4.0)))) + 2;
  const double sabs = to_double(abs(s));
  const double xmin = (sabs + 2.0 * K) * 4.0 / (2.0 * M_PI);
  const long M = std::max<long>(0, static_cast<long>(std::ceil(xmin - to_double(a))));
  const Real x = a + M;
  HPComplex sum;
  for (long n = 0; n < M; ++n) sum += exp(-s * HPComplex(log(a + n)));
  sum += detail::em_tail(s, x, Real(0), pow10(-(digits + 3)), 4 * K);
  return sum;
}

namespace detail {

/// sum_{n=1}^{M-1} n^{-s}, using complete multiplicativity: only prime powers
/// need an exponential.
inline HPComplex dirichlet_partial(const HPComplex& s, long M) {
  std::vector<long> spf(M, 0);
  std::vector<HPComplex> pw(M);
  HPComplex sum;
  if (M > 1) {
    pw[1] = HPComplex(1);
    sum += pw[1];
  }
  for (long n = 2; n < M; ++n) {
    if (spf[n] == 0) {
      for (long m = n; m < M; m += n)
        if (spf[m] == 0) spf[m] = n;
    }
    long p = spf[n];
    if (p == n) {
      pw[n] = exp(-s * HPComplex(log(Real(n))));
    } else {
      pw[n] = pw[p] * pw[n / p];
    }
    sum += pw[n];
  }
  return sum;
}

}  // namespace detail

/// Riemann zeta at the current precision.  Re s >= 1/2 uses Euler-Maclaurin;
/// Re s < 1/2 goes through the reflection formula; non-positive integers use
/// the Bernoulli closed form.
inline HPComplex zeta(const HPComplex& s) {
  if (s.im == 0 && s.re == 1) throw DomainError("zeta: pole at s = 1");
  if (s.im == 0 && s.re <= 0 && s.re == floor(s.re)) {
    long n = static_cast<long>(-s.re.convert_to<double>());
    if (n == 0) return HPComplex(Real(-1) / 2);
    if (n % 2 == 0) return HPComplex();
    // zeta(-n) = -B_{n+1}/(n+1) for odd n
    return HPComplex(-bernoulli_even((n + 1) / 2) / (n + 1));
  }
  if (s.re < Real(1) / 2) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    HPComplex one_minus = HPComplex(1) - s;
    HPComplex lg = lngamma_principal(one_minus);
    const Real p = pi();
    HPComplex f = exp(s * HPComplex(log(2 * p)) - HPComplex(log(p)) + lg);
    return f * sin(s * p / 2) * zeta(one_minus);
  }
  const int digits = current_digits();
  // Choose the split point M by a rough cost model: an exponential per
  // prime below M, a multiplication per composite, a few per EM term.
  const double sigma = to_double(s.re), t = to_double(s.im);
  const double target = digits + 3;
  long bestM = -1, bestK = 0;
  double best_cost = 1e300;
  for (long M = 2; M < 100000; M += (M < 64 ? 1 : M / 16)) {
    long K = detail::em_terms_needed(sigma, t, static_cast<double>(M), target);
    if (K < 0) continue;
    double cost = M * (1.0 + 6.0 / std::log(static_cast<double>(M) + 1)) + 3.0 * K;
    if (cost < best_cost) {
      best_cost = cost;
      bestM = M;
      bestK = K;
    }
    if (cost > 2 * best_cost) break;
  }
  if (bestM < 0) throw QuadratureFailure("zeta: no Euler-Maclaurin split found", "");
  HPComplex head = detail::dirichlet_partial(s, bestM);
  return head + detail::em_tail(s, Real(bestM), pow10(-(digits + 3)), Real(0), bestK + 10);
}

inline HPComplex zeta(const HPComplex& s, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return zeta(promoted(s));
}

inline Real zeta_real_gt1(long s) { return zeta(HPComplex(Real(s))).re; }

// ---------------------------------------------------------------------------
// ln Gamma

namespace detail {

/// Stirling series for ln Gamma(w), requiring |w| + Re w large enough that the
/// truncation error bound falls below 10^{-(digits+5)}.
inline HPComplex lngamma_stirling(const HPComplex& w) {
  const int digits = current_digits();
  const Real eps = pow10(-(digits + 5));
  const Real p = pi();
  HPComplex lw = log(w);
  HPComplex sum = (w - HPComplex(Real(1) / 2)) * lw - w + HPComplex(log(2 * p) / 2);
  const Real r = abs(w);
  const Real sec_half = 1 / cos(arg(w) / 2);
  HPComplex inv = HPComplex(1) / w;
  HPComplex inv2 = inv * inv;
  HPComplex pw = inv;
  Real bound_pow = sec_half * sec_half / (r * r);
  Real bound = sec_half * sec_half / r;
  for (long k = 1;; ++k) {
    Real b = bernoulli_fast(k);
    sum += pw * (b / (2 * k * (2 * k - 1)));
    pw *= inv2;
    bound *= bound_pow;
    // bound on the first omitted term: |B_{2k+2}| sec^{2k+2} / ((2k+2)(2k+1) r^{2k+1})
    Real tail = abs(bernoulli_fast(k + 1)) / ((2 * k + 2) * (2 * k + 1)) * bound;
    if (tail < eps * std::max(Real(1), abs(sum))) break;
    if (k > 20 * digits) throw QuadratureFailure("lngamma: Stirling series did not reach its tolerance", "");
  }
  return sum;
}

}  // namespace detail

/// Principal-branch ln Gamma(z) at the current precision, by upward recurrence
/// followed by the Stirling series with a tail bound.
inline HPComplex lngamma_principal(const HPComplex& z) {
  if (z.im == 0 && z.re <= 0 && z.re == floor(z.re)) throw DomainError("lngamma: pole at a non-positive integer");
  const int digits = current_digits();
  const double need = (digits + 5) * std::log(10.0) / M_PI + 2.0;
  HPComplex w = z;
  HPComplex prod(1);
  double arg_sum = 0;
  long m = 0;
  // Shift until |w| + Re w is large enough for the series tail bound.  The
  // product of the shifted arguments takes one logarithm; the branch is
  // recovered from the argument sum tracked in double precision.
  while (!(w.re > 1 && to_double(abs(w) + w.re) >= need)) {
    prod *= w;
    arg_sum += std::atan2(to_double(w.im), to_double(w.re));
    w.re += 1;
    ++m;
    if (m > 10000000) throw DomainError("lngamma: argument too far in the left half-plane");
  }
  HPComplex result = detail::lngamma_stirling(w);
  if (m > 0) {
    HPComplex lp = log(prod);
    const double k = std::round((arg_sum - to_double(lp.im)) / (2 * M_PI));
    lp.im += 2 * pi() * static_cast<long>(k);
    result -= lp;
  }
  return result;
}

/// Oracle ln Gamma(z) on the principal branch.
inline HPComplex lngamma_reference(const HPComplex& z, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return lngamma_principal(promoted(z));
}

inline HPComplex gamma_complex(const HPComplex& z) { return exp(lngamma_principal(z)); }

// ---------------------------------------------------------------------------
// Exponential integral and incomplete gamma

namespace detail {

/// Digits lost to cancellation when summing the power series of e^{-x}-type
/// functions at x: the largest term is ~e^{|x|}, the result ~e^{-Re x}.
inline int series_loss_digits(const HPComplex& x) {
  double ax = to_double(abs(x)), rx = to_double(x.re);
  return static_cast<int>(std::ceil((ax + rx) / std::log(10.0)));
}

/// Modified Lentz evaluation of Gamma(a, x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - ...)).
inline HPComplex incomplete_gamma_cf(const HPComplex& a, const HPComplex& x, long max_terms) {
  const int digits = current_digits();
  const Real eps = pow10(-(digits + 2));
  const Real tiny = pow10(-(4 * digits));
  auto guard = [&](HPComplex v) {
    if (abs(v) < tiny) v = HPComplex(tiny);
    return v;
  };
  HPComplex f = guard(x + HPComplex(1) - a);
  HPComplex C = f, D;
  long n = 1;
  for (; n <= max_terms; ++n) {
    HPComplex an = -(HPComplex(Real(n)) * (HPComplex(Real(n)) - a));
    HPComplex bn = x + HPComplex(Real(2 * n + 1)) - a;
    D = guard(bn + an * D);
    D = HPComplex(1) / D;
    C = guard(bn + an / C);
    HPComplex delta = C * D;
    f *= delta;
    if (abs(delta - HPComplex(1)) < eps) break;
  }
  if (n > max_terms) {
    throw QuadratureFailure("incomplete gamma continued fraction did not converge",
                            "terms=" + std::to_string(max_terms) + ", x=" + x.re.str(8) + "," + x.im.str(8));
  }
  return exp(-x + a * log(x)) / f;
}

/// E1 by its convergent series: -gamma - Log x - sum_{k>=1} (-x)^k / (k k!).
inline HPComplex e1_series(const HPComplex& x0) {
  ScopedPrecision sp(current_digits() + series_loss_digits(x0) + 5);
  const HPComplex x = promoted(x0);
  const Real eps = pow10(-(current_digits() + 2));
  HPComplex term = HPComplex(1), sum;
  HPComplex mx = -x;
  for (long k = 1;; ++k) {
    term *= mx / Real(k);  // (-x)^k / k!
    HPComplex t = term / Real(k);
    sum += t;
    if (abs(t) < eps * (abs(sum) + 1) && k > to_double(abs(x))) break;
  }
  return HPComplex(-euler_gamma()) - log(x) - sum;
}

/// gamma(a, x) = x^a sum_k (-x)^k / (k! (a+k)), for a not a non-positive integer.
inline HPComplex lower_incomplete_gamma_series(const HPComplex& a, const HPComplex& x) {
  const Real eps = pow10(-(current_digits() + 2));
  HPComplex term = HPComplex(1), sum = HPComplex(1) / a;
  HPComplex mx = -x;
  for (long k = 1;; ++k) {
    term *= mx / Real(k);
    HPComplex t = term / (a + HPComplex(Real(k)));
    sum += t;
    if (abs(t) < eps * abs(sum) && k > to_double(abs(x))) break;
    if (k > 100000) throw QuadratureFailure("lower incomplete gamma series did not converge", "");
  }
  return exp(a * log(x)) * sum;
}

inline bool use_continued_fraction(const HPComplex& x) { return series_loss_digits(x) > 30 && x.re > 0; }

}  // namespace detail

/// Exponential integral E1(x) on the principal branch (cut along x < 0).
inline HPComplex exp_integral_e1(const HPComplex& x) {
  if (x.re == 0 && x.im == 0) throw DomainError("E1: logarithmic singularity at 0");
  if (detail::use_continued_fraction(x)) return detail::incomplete_gamma_cf(HPComplex(), x, 100000);
  return detail::e1_series(x);
}

/// Upper incomplete gamma Gamma(a, x), principal branch in x.
inline HPComplex upper_incomplete_gamma(const HPComplex& a0, const HPComplex& x0, long max_terms = 100000) {
  const HPComplex a = promoted(a0), x = promoted(x0);
  const bool x_zero = x.re == 0 && x.im == 0;
  const bool nonpos_int = a.im == 0 && a.re <= 0 && a.re == floor(a.re);
  if (x_zero) {
    if (a.re > 0) return gamma_complex(a);
    throw DomainError("incomplete gamma: x = 0 requires Re a > 0");
  }
  if (detail::use_continued_fraction(x)) return detail::incomplete_gamma_cf(a, x, max_terms);
  if (nonpos_int) {
    // Downward recurrence from Gamma(0, x) = E1(x):
    // Gamma(-m, x) = (-1)^m/m! [E1(x) - e^{-x} sum_{k<m} (-1)^k k!/x^{k+1}]
    const long m = static_cast<long>(-a.re.convert_to<double>());
    const double lx = std::max(0.0, std::log10(to_double(abs(x))));
    ScopedPrecision sp(current_digits() + static_cast<int>(std::ceil(m * lx)) + 10);
    const HPComplex x = promoted(x0);
    HPComplex e1 = detail::e1_series(x);
    HPComplex inv = HPComplex(1) / x;
    HPComplex term = inv, sum;
    for (long k = 0; k < m; ++k) {
      sum += term;
      term *= -(inv * Real(k + 1));
    }
    HPComplex r = e1 - exp(-x) * sum;
    Real fact = 1;
    for (long k = 2; k <= m; ++k) fact *= k;
    r /= fact;
    return (m % 2 == 0) ? r : -r;
  }
  ScopedPrecision sp(current_digits() + detail::series_loss_digits(x) + 10);
  const HPComplex ap = promoted(a), xp = promoted(x);
  return gamma_complex(ap) - detail::lower_incomplete_gamma_series(ap, xp);
}

inline HPComplex upper_incomplete_gamma(const HPComplex& a, const HPComplex& x, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return upper_incomplete_gamma(a, x);
}

// ---------------------------------------------------------------------------
// Error function

inline HPComplex erf_hp(const HPComplex& w0) {
  const HPComplex w = promoted(w0);
  if (w.re == 0 && w.im == 0) return {};
  const Real p = pi();
  const double aw = to_double(abs(w));
  if (aw <= 5 || abs(w.im) > abs(w.re)) {
    // Taylor: erf(w) = 2/sqrt(pi) sum (-1)^k w^{2k+1} / (k! (2k+1))
    const int extra = static_cast<int>(std::ceil(aw * aw / std::log(10.0))) + 5;
    ScopedPrecision sp(current_digits() + std::min(extra, 4000));
    const Real eps = pow10(-(current_digits() + 2));
    const HPComplex w = promoted(w0);
    HPComplex w2 = -(w * w);
    HPComplex term = w, sum = w;
    for (long k = 1;; ++k) {
      term *= w2 / Real(k);
      HPComplex t = term / Real(2 * k + 1);
      sum += t;
      if (abs(t) < eps * abs(sum) && k > aw * aw) break;
    }
    return sum * (2 / sqrt(p));
  }
  if (w.re < 0) return -erf_hp(-w);
  // erfc(w) = e^{-w^2}/sqrt(pi) / (w + (1/2)/(w + 1/(w + (3/2)/(w + ...))))
  const int digits = current_digits();
  const Real eps = pow10(-(digits + 2));
  const Real tiny = pow10(-(4 * digits));
  HPComplex f = w, C = w, D;
  long n = 1;
  for (; n < 1000000; ++n) {
    HPComplex an = HPComplex(Real(n) / 2);
    D = w + an * D;
    if (abs(D) < tiny) D = HPComplex(tiny);
    D = HPComplex(1) / D;
    C = w + an / C;
    if (abs(C) < tiny) C = HPComplex(tiny);
    HPComplex delta = C * D;
    f *= delta;
    if (abs(delta - HPComplex(1)) < eps) break;
  }
  HPComplex erfc = exp(-(w * w)) / (f * sqrt(p));
  return HPComplex(1) - erfc;
}

inline HPComplex erf_hp(const HPComplex& w, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return erf_hp(w);
}

}  // namespace slg
