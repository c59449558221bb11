// ln Gamma(z) from the complete Stirling expansion
//
//     ln Gamma(z) = F(z) + TS_N(z) + R_N(z) [+ SD(z)]
//
// with F the leading Stirling form, TS_N the first N-1 terms of the series,
// R_N the regularised remainder (Borel, Mellin-Barnes or incomplete-gamma
// form) and SD the Stokes discontinuity term switched on across arg z = pi/2.
#pragma once

#include "slg/complex.hpp"
#include "slg/errors.hpp"
#include "slg/precision.hpp"
#include "slg/quadrature.hpp"
#include "slg/sector.hpp"
#include "slg/special_functions.hpp"
#include "slg/terminant.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace slg {

enum class StirlingMethod { borel, mb, paris_gamma };
enum class SDWeight { full, half };

inline const char* to_string(StirlingMethod m) {
  switch (m) {
    case StirlingMethod::borel: return "borel";
    case StirlingMethod::mb: return "mb";
    case StirlingMethod::paris_gamma: return "paris";
  }
  return "?";
}

struct StirlingRequest {
  PolarPoint z;
  long N = 10;
  StirlingMethod method = StirlingMethod::borel;
  long n_sum_cap = 100000;
  PrecisionContext ctx{30};
};

struct LnGammaComponents {
  HPComplex F, TS, remainder, SD;
};

struct LnGammaResult {
  HPComplex value;
  LnGammaComponents components;
  EvalReport report;
};

/// N_0 = ceil(pi |z|), at least 1.
inline long optimal_truncation(const Real& modulus) {
  if (!(modulus > 0)) throw DomainError("optimal_truncation: modulus must be positive");
  ScopedPrecision sp(std::max(current_digits(), 30));
  return std::max<long>(1, ceil(pi() * modulus).convert_to<long>());
}

inline long optimal_truncation(double modulus) {
  ScopedPrecision sp(30);
  return optimal_truncation(Real(modulus));
}

/// (z - 1/2) ln z - z + ln(2 pi)/2 with the logarithm taken on the sheet given
/// by the phase of z (principal for theta in (-pi, pi]).
inline HPComplex stirling_F(const PolarPoint& z) {
  HPComplex lz = z.log();
  HPComplex zc = z.to_cartesian();
  return (zc - HPComplex(Real(1) / 2)) * lz - zc + HPComplex(log(2 * pi()) / 2);
}

inline HPComplex stirling_F(const PolarPoint& z, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return stirling_F(z);
}

/// Coefficient of z^{1-2k} in the series: the cosecant form
/// (-1)^k 2^{-2k} Gamma(2k-1) c_k(1), identical to B_{2k}/(2k(2k-1)).
inline Rational stirling_coefficient_exact(long k) {
  BigInt f = 1;
  for (long j = 2; j < 2 * k - 1; ++j) f *= j;  // Gamma(2k-1) = (2k-2)!
  Rational v = Rational(f, BigInt(1) << (2 * k)) * cosecant_poly_unity_exact(k);
  return (k % 2 == 0) ? v : Rational(-v);
}

inline Real stirling_coefficient(long k) {
  if (k <= kExactBernoulliLimit) return to_real(stirling_coefficient_exact(k));
  return bernoulli_even(k) / (2 * k * (2 * k - 1));
}

/// TS_N(z) = z sum_{k=1}^{N-1} (-1)^k (2z)^{-2k} Gamma(2k-1) c_k(1).
inline HPComplex truncated_series(const PolarPoint& z, long N) {
  if (N < 1) throw std::invalid_argument("truncated_series: N must be at least 1");
  HPComplex inv = HPComplex(1) / z.to_cartesian();
  HPComplex inv2 = inv * inv;
  HPComplex pw = inv, sum;
  for (long k = 1; k < N; ++k) {
    sum += pw * stirling_coefficient(k);
    pw *= inv2;
  }
  return sum;
}

inline HPComplex truncated_series(const PolarPoint& z, long N, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return truncated_series(z, N);
}

/// (-1)^{M+1} S ln(1 - e^{2(-1)^M pi i z}), S = 1 or 1/2.
inline HPComplex stokes_discontinuity(const PolarPoint& z, long M, SDWeight weight) {
  HPComplex zc = z.to_cartesian();
  const Real sgn = (M % 2 == 0) ? 1 : -1;
  HPComplex u = exp(HPComplex(Real(0), 2 * sgn * pi()) * zc);
  HPComplex one_minus = HPComplex(1) - u;
  if (abs(one_minus) == 0) throw DomainError("Stokes discontinuity: logarithm of zero (z is an integer)");
  HPComplex v = log_series_regularised(-u);
  if (weight == SDWeight::half) v /= Real(2);
  return (M % 2 == 0) ? -v : v;
}

inline HPComplex stokes_discontinuity(const PolarPoint& z, long M, SDWeight weight, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return stokes_discontinuity(z, M, weight);
}

namespace detail {

/// Accuracy goal for the quadrature-heavy remainder forms: the target plus
/// half the guard digits.
inline int sum_goal_digits(const PrecisionContext& ctx) { return ctx.target_digits() + ctx.guard_digits() / 2; }

/// Smallest X with X - e ln X >= D (X >= D).
inline double exp_decay_threshold(double D, double e) {
  double X = D + 1;
  for (int i = 0; i < 100; ++i) {
    double nx = D + std::max(0.0, e) * std::log(X);
    if (std::fabs(nx - X) < 1e-9) break;
    X = nx;
  }
  return X + 2;
}

/// Plan for an n-sum whose terms for n >= n1 are replaced by a Hurwitz-zeta
/// asymptotic series.
struct NSumPlan {
  long n_direct = 0;      // terms 1..n_direct summed directly
  bool use_tail = false;  // add the asymptotic tail from n_direct + 1
  std::vector<std::string> warnings;
  Real extra_error = 0;
};

inline NSumPlan plan_nsum(const Real& modulus, long N, long n_cap, int goal_digits) {
  const int wd = goal_digits;
  NSumPlan plan;
  const double D = (wd + 5) * std::log(10.0);
  const double X = exp_decay_threshold(D, 2.0 * N - 2);
  const double r = to_double(modulus);
  const long n1 = std::max<long>(1, static_cast<long>(std::ceil(X / (2 * M_PI * r))));
  // Direct-sum bound: n^{-2N+1} Gamma(2N-1) / (2 pi |z|)^{2N-2} < 10^{-(wd+2)}.
  long n_bound = -1;
  if (N > 1) {
    double lb = std::lgamma(2.0 * N - 1) - (2.0 * N - 2) * std::log(2 * M_PI * r) + (wd + 2) * std::log(10.0) +
                std::log(10.0);  // guard factor 10
    double n = std::exp(lb / (2.0 * N - 1));
    if (n < 1e15) n_bound = std::max<long>(1, static_cast<long>(std::ceil(n)));
  }
  if (n_bound > 0 && n_bound < n1) {
    plan.n_direct = n_bound;
  } else {
    plan.n_direct = n1 - 1;
    plan.use_tail = true;
  }
  if (plan.n_direct > n_cap) {
    plan.n_direct = n_cap;
    plan.warnings.push_back("n-sum truncated at the cap of " + std::to_string(n_cap) + " terms");
    if (plan.use_tail && 2 * M_PI * (n_cap + 1) * r < X) {
      plan.use_tail = false;
      plan.warnings.push_back("tail expansion not valid from the cap; remainder is a truncated sum");
    }
  }
  return plan;
}

/// sum_{j>=0} (-1)^j Gamma(2N-1+2j) A^{-j-1} zeta(2N+2j, n1): the asymptotic
/// tail of sum_{n>=n1} n^{-(2N-2)} \int y^{2N-2} e^{-y} / (y^2 + n^2 A) dy.
inline HPComplex borel_tail(const HPComplex& A, long N, long n1, Real& err) {
  const Real eps = pow10(-(current_digits() + 3));
  HPComplex invA = HPComplex(1) / A;
  HPComplex apow = invA;
  Real g = exp(lgamma(Real(2 * N - 1)));  // Gamma(2N-1+2j)
  HPComplex sum;
  Real prev = -1;
  for (long j = 0;; ++j) {
    HPComplex term = apow * g * hurwitz_zeta(HPComplex(Real(2 * N + 2 * j)), Real(n1)).re;
    if (j % 2) term = -term;
    Real a = abs(term);
    if (prev >= 0 && a > prev) {
      err = prev;
      break;
    }
    sum += term;
    if (a < eps * abs(sum)) {
      err = a;
      break;
    }
    prev = a;
    apow *= invA;
    g *= Real(2 * N - 1 + 2 * j) * Real(2 * N + 2 * j);
  }
  return sum;
}

/// 2 (-1)^{N+1} z (2 pi z)^{-(2N-2)} sum_n n^{-(2N-2)} I_n with
/// I_n = \int y^{2N-2} e^{-y}/(y^2 + 4 pi^2 n^2 z^2) dy; for `pv` the point is
/// z = i|z| on the first upper line and the integrals are principal values.
inline EvalReport borel_cauchy_sum(const PolarPoint& z, long N, long n_cap, bool pv, const QuadratureSpec& quad,
                                   int goal_digits) {
  const Real p = pi();
  const Real twopi = 2 * p;
  HPComplex zc = z.to_cartesian();
  HPComplex A;  // a_n = n^2 A
  if (pv) {
    A = HPComplex(-(twopi * z.modulus) * (twopi * z.modulus));
  } else {
    HPComplex tz = zc * twopi;
    A = tz * tz;
  }
  // Prefactor in front of the n-sum.
  HPComplex pref = pow_polar(z.rotated(Real(0)), HPComplex(Real(-(2 * N - 2)))) *
                   exp(-Real(2 * N - 2) * log(twopi)) * zc * Real(2);
  if (N % 2 == 0) pref = -pref;  // 2(-1)^{N+1}
  NSumPlan plan = plan_nsum(z.modulus, N, n_cap, goal_digits);
  EvalReport rep;
  rep.method = EvalMethod::borel;
  rep.warnings = plan.warnings;
  const Real target = pow10(-(goal_digits + 2));
  const Real apref = abs(pref);
  HPComplex sum;
  Real err = 0;
  for (long n = 1; n <= plan.n_direct; ++n) {
    Real nw = exp(-Real(2 * N - 2) * log(Real(n)));
    CauchyIntegralOptions opt{target / (apref * nw * (plan.n_direct + 1)), pow10(-goal_digits)};
    QuadResult r = cauchy_integral(Real(2), Real(2 * N - 1), A * Real(n * n), pv, quad, opt);
    sum += r.value * nw;
    err += r.est_error * nw;
    rep.nodes_used += r.nodes;
    if (!r.converged) rep.warnings.push_back("quadrature refinement stalled at n = " + std::to_string(n));
  }
  rep.terms_used = plan.n_direct;
  if (plan.use_tail) {
    Real terr = 0;
    sum += borel_tail(A, N, plan.n_direct + 1, terr);
    err += terr;
  }
  rep.value = pref * sum;
  rep.est_error = apref * err;
  ensure_finite(rep.value, "Borel remainder");
  return rep;
}

}  // namespace detail

/// Borel-summed remainder R_N(z) for arg z inside the Stokes sector M of the
/// series (M = number of upper lines crossed; lines at (M + 1/2) pi).  For
/// M >= 1 the exponentials from the crossed lines are included in resummed
/// form.
inline EvalReport borel_remainder(const PolarPoint& z, long N, long M, long n_cap, const QuadratureSpec& quad,
                                  const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  quad.validate();
  if (N < 1) throw std::invalid_argument("borel_remainder: N must be at least 1");
  const Real tol = default_line_tolerance(ctx);
  // Sector check: (M - 1/2) pi < |theta| < (M + 1/2) pi.
  SectorLocation loc = sector_locate(z.theta, Real(2), tol);
  if (loc.on_line) throw SectorError("borel_remainder: arg z is on a Stokes line; use borel_remainder_line");
  if (loc.M != M) throw SectorError("borel_remainder: arg z is not in Stokes sector " + std::to_string(M));
  EvalReport rep = detail::borel_cauchy_sum(z, N, n_cap, false, quad, detail::sum_goal_digits(ctx));
  if (M >= 1) {
    // sum_n (1/n) sum_j (-1)^{M-j} e^{2(-1)^{M-j} n i pi z}, resummed with ln(1-u).
    HPComplex zc = z.to_cartesian();
    const Real sgn_side = loc.side == RotationSide::upper ? 1 : -1;
    for (long j = 1; j <= M; ++j) {
      const Real s = ((M - j) % 2 == 0) ? 1 : -1;
      HPComplex u = exp(HPComplex(Real(0), 2 * s * sgn_side * pi()) * zc);
      HPComplex v = -log_series_regularised(-u);  // sum u^n / n
      rep.value += (s > 0) ? v : -v;
    }
  }
  return rep;
}

/// Remainder on the Stokes line arg z = (M + 1/2) pi: principal-value n-sum,
/// the exponentials of the M crossed lines and the half-weight series.
inline EvalReport borel_remainder_line(const Real& modulus, long N, long M, long n_cap, const QuadratureSpec& quad,
                                       const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  quad.validate();
  if (M != 0) {
    // Lines beyond the first lie outside the principal branch of ln Gamma.
    throw SectorError("borel_remainder_line: only the first upper line (M = 0) is supported");
  }
  PolarPoint z(modulus, pi() * (2 * M + 1) / 2);
  EvalReport rep = detail::borel_cauchy_sum(z, N, n_cap, true, quad, detail::sum_goal_digits(ctx));
  // -i e^{i theta} sum_n e^{-2 n pi |z|} / (2n) with i e^{i theta} = -1 for M = 0.
  HPComplex half = -log_series_regularised(HPComplex(-exp(-2 * pi() * modulus))) / Real(2);
  rep.value += half;
  return rep;
}

/// The principal-value part of the line remainder (without the half series).
inline EvalReport borel_remainder_line_pv(const Real& modulus, long N, long n_cap, const QuadratureSpec& quad,
                                          const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  quad.validate();
  PolarPoint z(modulus, pi() / 2);
  return detail::borel_cauchy_sum(z, N, n_cap, true, quad, detail::sum_goal_digits(ctx));
}

/// Mellin-Barnes remainder in the B_{2k} normalisation:
///   -(1/2i) \int_{c-i\infty}^{c+i\infty} z^{-s} zeta(-s) / (s sin(pi s)) ds,
/// c in (max(0, 2N-3), 2N-1); valid for |arg z| < pi.
inline EvalReport mb_remainder(const PolarPoint& z, long N, const QuadratureSpec& quad, const PrecisionContext& ctx,
                               const Real& c) {
  ScopedPrecision sp(ctx);
  quad.validate();
  if (N < 1) throw std::invalid_argument("mb_remainder: N must be at least 1");
  Real lo = N >= 2 ? Real(2 * N - 3) : Real(0);
  if (!(c > lo && c < 2 * N - 1)) throw std::invalid_argument("mb_remainder: offset c outside (max(0,2N-3), 2N-1)");
  const Real p = pi();
  if (!(abs(z.theta) < p)) throw DivergenceError("MB contour invalid at this phase (|arg z| must be below pi)");
  const HPComplex lz = z.log();
  auto g = [&](const HPComplex& s) {
    HPComplex zs = exp(-(s * lz));
    HPComplex zt = zeta(-s);
    return zs * zt / (s * sin(s * p));
  };
  // |zeta(-s)| grows like |t|^{c+1/2} before e^{-(pi-|theta|)|t|} takes over.
  const double peak = to_double((c + 1) / (p - abs(z.theta)));
  // The contour integral is the slow path; it is run to the target plus half
  // the guard digits rather than to full working precision.
  const int mb_digits = detail::sum_goal_digits(ctx);
  QuadratureSpec q = quad;
  q.abs_tail_bound = std::max(quad.abs_tail_bound, pow10(-(mb_digits + 2)));
  QuadResult r = mb_line_integral(g, c, q, pow10(-mb_digits), 2 * peak + 32);
  EvalReport rep;
  rep.method = EvalMethod::mb;
  rep.value = r.value * HPComplex(Real(0), Real(1) / 2);  // -1/(2i) = i/2
  rep.est_error = r.est_error / 2;
  rep.nodes_used = r.nodes;
  ensure_finite(rep.value, "MB remainder");
  return rep;
}

inline EvalReport mb_remainder(const PolarPoint& z, long N, const QuadratureSpec& quad, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  Real lo = N >= 2 ? Real(2 * N - 3) : Real(0);
  return mb_remainder(z, N, quad, ctx, (lo + 2 * N - 1) / 2);
}

/// Incomplete-gamma remainder
///   Gamma(2N-1)/(2 pi i) sum_n (1/n)[e^{-x_n} Gamma(2-2N,-x_n) - e^{x_n} Gamma(2-2N,x_n)],
/// x_n = 2 pi n z i; principal branches, so z must be off the Stokes lines.
inline EvalReport paris_remainder(const PolarPoint& z, long N, long n_cap, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  if (N < 1) throw std::invalid_argument("paris_remainder: N must be at least 1");
  const Real p = pi();
  const Real tol = default_line_tolerance(ctx);
  SectorLocation loc = sector_locate(z.theta, Real(2), tol);
  if (loc.on_line) throw SectorError("paris_remainder: not defined on a Stokes line");
  if (!(abs(z.theta) <= p)) throw SectorError("paris_remainder: arg z must lie in (-pi, pi]");
  const int wd = current_digits();
  const HPComplex a(Real(2 - 2 * N));
  const HPComplex x1 = HPComplex(Real(0), 2 * p) * z.to_cartesian();
  detail::NSumPlan plan = detail::plan_nsum(z.modulus, N, n_cap, wd);
  EvalReport rep;
  rep.method = EvalMethod::paris_gamma;
  rep.warnings = plan.warnings;
  HPComplex sum;
  for (long n = 1; n <= plan.n_direct; ++n) {
    HPComplex x = x1 * Real(n);
    HPComplex t1 = exp(-x) * upper_incomplete_gamma(a, -x);
    HPComplex t2 = exp(x) * upper_incomplete_gamma(a, x);
    sum += (t1 - t2) / Real(n);
  }
  rep.terms_used = plan.n_direct;
  Real err = 0;
  if (plan.use_tail) {
    // e^x Gamma(a,x) ~ sum_k u_k x^{a-1-k}; only even k survive the bracket,
    // each contributing -2 u_k x1^{1-2N-k} zeta(2N+k, n1).
    const long n1 = plan.n_direct + 1;
    const Real eps = pow10(-(wd + 3));
    HPComplex inv = HPComplex(1) / x1;
    HPComplex xpow = pow(x1, 1 - 2 * N);
    Real u = 1;
    Real prev = -1;
    HPComplex tail;
    for (long k = 0;; ++k) {
      if (k > 0) {
        u *= Real(2 - 2 * N - k);
        xpow *= inv;
      }
      if (k % 2) continue;
      HPComplex term = xpow * (-2 * u) * hurwitz_zeta(HPComplex(Real(2 * N + k)), Real(n1)).re;
      Real at = abs(term);
      if (prev >= 0 && at > prev) {
        err = prev;
        break;
      }
      tail += term;
      if (at < eps * abs(tail)) {
        err = at;
        break;
      }
      prev = at;
    }
    sum += tail;
  }
  Real g = exp(lgamma(Real(2 * N - 1)));
  HPComplex pref = HPComplex(Real(0), -g / (2 * p));  // Gamma(2N-1)/(2 pi i)
  rep.value = pref * sum;
  rep.est_error = abs(pref) * err;
  ensure_finite(rep.value, "incomplete-gamma remainder");
  return rep;
}

// ---------------------------------------------------------------------------
// Assembly

inline LnGammaResult lngamma_asymptotic(const StirlingRequest& req) {
  const PrecisionContext& ctx0 = req.ctx;
  ScopedPrecision sp0(ctx0);
  if (req.N < 1) throw std::invalid_argument("lngamma_asymptotic: N must be at least 1");
  const Real p = pi();
  const PolarPoint& z = req.z;
  if (!(z.theta > -p && z.theta <= p)) throw SectorError("lngamma_asymptotic: arg z must lie in (-pi, pi]");
  const Real tol = default_line_tolerance(ctx0);
  if (abs(z.theta - p) <= tol && z.modulus == floor(z.modulus)) throw DomainError("lngamma: pole at a non-positive integer");

  // Lower half-plane up to and including -pi/2: Schwarz reflection.
  if (z.theta <= -p / 2 + tol) {
    StirlingRequest up = req;
    up.z = z.conjugate();
    if (abs(up.z.theta - p / 2) <= tol) up.z.theta = p / 2;
    LnGammaResult r = lngamma_asymptotic(up);
    r.value = conj(r.value);
    r.components = {conj(r.components.F), conj(r.components.TS), conj(r.components.remainder),
                    conj(r.components.SD)};
    r.report.value = conj(r.report.value);
    r.report.warnings.push_back("evaluated by conjugation of the upper half-plane value");
    return r;
  }

  const Real d_line = z.theta - p / 2;
  const bool on_line = abs(d_line) <= tol;
  std::vector<std::string> warnings;
  PrecisionContext ctx = ctx0;
  if (!on_line && abs(d_line) <= near_line_threshold()) {
    warnings.push_back("phase within 1e-5 pi of the Stokes line arg z = pi/2; sector form kept at raised precision");
    ctx = ctx0.boosted(ctx0.guard_digits());
  }
  ScopedPrecision sp(ctx);
  const QuadratureSpec quad = QuadratureSpec::defaults(ctx);
  PolarPoint zz(promoted(z.modulus), on_line ? p / 2 : promoted(z.theta));

  LnGammaResult out;
  out.components.F = stirling_F(zz);
  out.components.TS = truncated_series(zz, req.N);
  const bool upper = !on_line && d_line > 0;

  switch (req.method) {
    case StirlingMethod::borel:
      if (on_line) {
        out.report = borel_remainder_line_pv(z.modulus, req.N, req.n_sum_cap, quad, ctx);
        out.components.SD = stokes_discontinuity(zz, 0, SDWeight::half);
      } else {
        out.report = detail::borel_cauchy_sum(zz, req.N, req.n_sum_cap, false, quad, detail::sum_goal_digits(ctx));
        if (upper) out.components.SD = stokes_discontinuity(zz, 0, SDWeight::full);
      }
      break;
    case StirlingMethod::mb:
      // The MB integral is analytic for |arg z| < pi and already contains
      // the subdominant exponentials.
      out.report = mb_remainder(zz, req.N, quad, ctx);
      break;
    case StirlingMethod::paris_gamma:
      if (on_line) throw SectorError("incomplete-gamma remainder is not defined on the Stokes line");
      out.report = paris_remainder(zz, req.N, req.n_sum_cap, ctx);
      if (upper) out.components.SD = stokes_discontinuity(zz, 0, SDWeight::full);
      break;
  }
  out.components.remainder = out.report.value;
  out.value = out.components.F + out.components.TS + out.components.remainder + out.components.SD;
  out.report.value = out.value;
  for (auto& w : warnings) out.report.warnings.push_back(w);
  // Round everything back to the caller's working precision.
  const int wd = ctx0.working_digits();
  out.value = rounded(out.value, wd);
  out.components = {rounded(out.components.F, wd), rounded(out.components.TS, wd),
                    rounded(out.components.remainder, wd), rounded(out.components.SD, wd)};
  out.report.value = out.value;
  return out;
}

// ---------------------------------------------------------------------------
// Stokes multipliers

/// Step multiplier across the line |theta| = (2M+1) pi / beta: 0 before it,
/// 1/2 on it, 1 past it.
inline Rational conventional_multiplier(const Real& theta, const Real& beta, long M, const Real& tol) {
  const Real line = (2 * M + 1) * pi() / beta;
  const Real d = abs(theta) - line;
  if (abs(d) <= tol) return Rational(1, 2);
  return d < 0 ? Rational(0) : Rational(1);
}

inline Rational conventional_multiplier(const Real& theta, const Real& beta, long M) {
  return conventional_multiplier(theta, beta, M, pow10(-current_digits() / 2));
}

/// How the free phase parameter omega of the smoothed multiplier is chosen.
enum class OmegaRule { theta_minus_half_pi };

/// Signs of the smoothed-multiplier formula.  `symmetric` uses e^{-i omega nu}
/// in C_0 and sqrt|z| in the prefactor, which makes Re S(pi/2 + x) +
/// Re S(pi/2 - x) = 1; `as_printed` keeps e^{+i omega nu} and sqrt z.
enum class SmoothedForm { symmetric, as_printed };

/// Smoothed Stokes multiplier
///   S = 1/2 + erf(c sqrt(pi|z|))/2 - i C_0 e^{-2 pi gamma |z|} / (2 pi sqrt z)
/// with gamma = 1 + i e^{i theta}, C_0 = B_0 e^{-2 pi i omega |z|} + e^{i omega nu}/(1 + e^{-i omega}),
/// B_0 = e^{-i omega alpha}/(1 - e^{-i omega}) + i/c, alpha = 2N_0 - 1 - 2 pi|z|,
/// nu = 2N_0 - 1 and c = omega + i omega^2/6 - omega^3/36 + i omega^4/270.
inline HPComplex smoothed_multiplier(const PolarPoint& z, long N0, OmegaRule rule, const PrecisionContext& ctx,
                                     SmoothedForm form = SmoothedForm::symmetric) {
  ScopedPrecision sp(ctx);
  if (z.modulus < 1) throw DomainError("smoothed_multiplier: requires |z| >= 1");
  const Real p = pi();
  Real omega;
  switch (rule) {
    case OmegaRule::theta_minus_half_pi: omega = z.theta - p / 2; break;
  }
  if (omega == 0) {
    // Limit omega -> 0: erf term vanishes; B_0 and i/c have cancelling poles.
    omega = pow10(-ctx.working_digits() / 2);
  }
  const Real r = z.modulus;
  const HPComplex I(Real(0), Real(1));
  const HPComplex w(omega);
  const HPComplex w2 = w * w;
  const HPComplex c = w + I * w2 / Real(6) - w2 * w / Real(36) + I * w2 * w2 / Real(270);
  const Real alpha = Real(2 * N0 - 1) - 2 * p * r;
  const Real nu = Real(2 * N0 - 1);
  const HPComplex e_mw = expi(-omega);
  const HPComplex B0 = expi(-omega * alpha) / (HPComplex(1) - e_mw) + I / c;
  const Real nu_sign = form == SmoothedForm::symmetric ? -1 : 1;
  const HPComplex C0 = B0 * expi(-2 * p * omega * r) + expi(nu_sign * omega * nu) / (HPComplex(1) + e_mw);
  const HPComplex gamma = HPComplex(1) + I * expi(z.theta);
  const HPComplex root = form == SmoothedForm::symmetric ? HPComplex(sqrt(r)) : pow_polar(z, HPComplex(Real(1) / 2));
  const HPComplex erf_term = erf_hp(c * sqrt(p * r));
  return HPComplex(Real(1) / 2) + erf_term / Real(2) - I * C0 * exp(-(gamma * (2 * p * r))) / (root * (2 * p));
}

/// The exact multiplier R_{N0}(z) e^{-2 pi i z}: the true remainder after N0
/// terms (from the reference ln Gamma) measured in units of the leading
/// subdominant exponential.
inline HPComplex exact_multiplier(const PolarPoint& z, long N0, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  HPComplex zc = z.to_cartesian();
  HPComplex R = lngamma_principal(zc) - stirling_F(z) - truncated_series(z, N0);
  return R * exp(HPComplex(Real(0), -2 * pi()) * zc);
}

}  // namespace slg
