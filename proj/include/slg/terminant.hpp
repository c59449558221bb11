// Regularised values of divergent tails.
//
// The central object is the generalised Type I terminant
//
//     S_{p,q}(N, z^beta) = sum_{k>=N} Gamma(pk+q) (-z^beta)^k ,
//
// evaluated by Borel summation (a Cauchy integral along the positive real
// axis plus the exponentials picked up across Stokes lines), by the closed-form
// jump between adjacent sectors, and by Mellin-Barnes contour quadrature.
#pragma once

#include "slg/complex.hpp"
#include "slg/errors.hpp"
#include "slg/precision.hpp"
#include "slg/quadrature.hpp"
#include "slg/sector.hpp"
#include "slg/special_functions.hpp"

#include <string>
#include <vector>

namespace slg {

struct TerminantSpec {
  Real p = 1;
  Real q = 0;
  Real beta = 1;
  long N = 1;

  void validate() const {
    if (!(p > 0)) throw std::invalid_argument("TerminantSpec: p must be positive");
    if (!(beta > 0)) throw std::invalid_argument("TerminantSpec: beta must be positive");
    if (N < 1) throw std::invalid_argument("TerminantSpec: N must be at least 1");
    if (!(p * N + q > 0)) throw std::invalid_argument("TerminantSpec: pN + q must be positive");
  }
};

enum class EvalMethod { borel, mb, jump_closed_form, direct_sum, paris_gamma };

inline const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::borel: return "borel";
    case EvalMethod::mb: return "mb";
    case EvalMethod::jump_closed_form: return "jump_closed_form";
    case EvalMethod::direct_sum: return "direct_sum";
    case EvalMethod::paris_gamma: return "paris_gamma";
  }
  return "?";
}

struct EvalReport {
  HPComplex value;
  EvalMethod method = EvalMethod::borel;
  Real est_error = 0;
  long nodes_used = 0;
  long terms_used = 0;
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Elementary regularised series

/// Regularised sum_{k>=N} z^k = z^N / (1 - z).
inline HPComplex geometric_regularised(const HPComplex& z, long N) {
  if (z.re == 1 && z.im == 0) throw DomainError("geometric series: pole at z = 1");
  return pow(z, N) / (HPComplex(1) - z);
}

/// Regularised sum_{k>=1} (-1)^{k+1} z^k / k = ln(1 + z), principal branch.
inline HPComplex log_series_regularised(const HPComplex& z) {
  HPComplex w = HPComplex(1) + z;
  if (w.re == 0 && w.im == 0) throw DomainError("logarithmic series: singular at z = -1");
  return log(w);
}

// ---------------------------------------------------------------------------
// Cauchy integrals along the positive real axis

/// \int_0^\infty t^m e^{-t} / (t - t0) dt in closed form (principal value when
/// `pv` is set and t0 > 0):  sum_{j<m} j! t0^{m-1-j} + t0^m e^{-t0} K(t0) with
/// K(t0) = e^{t0} \int_0^\infty e^{-t}/(t - t0) dt = -gamma - L - sum_k t0^k/(k k!)
/// where L = ln t0 for the principal value and Log(-t0) otherwise.
inline HPComplex exp_cauchy_moment(long m, const HPComplex& t0_in, bool pv) {
  const double at0 = to_double(abs(t0_in));
  // Cancellation between the polynomial part and the K term when |t0| >> m.
  double loss = 0;
  if (at0 > 1) loss = m * std::log10(at0) - std::lgamma(m + 1.0) / std::log(10.0);
  ScopedPrecision sp(current_digits() + static_cast<int>(std::max(0.0, loss)) + 10);
  const HPComplex t0 = promoted(t0_in);
  const Real eps = pow10(-(current_digits() + 2));
  HPComplex term(1), series;
  for (long k = 1;; ++k) {
    term *= t0 / Real(k);
    HPComplex t = term / Real(k);
    series += t;
    if (k > 2 * at0 + 10 && abs(t) < eps * abs(series)) break;
  }
  HPComplex L = pv ? HPComplex(log(t0.re)) : log(-t0);
  HPComplex K = HPComplex(-euler_gamma()) - L - series;
  HPComplex poly;
  HPComplex t0pow(1);  // t0^{m-1-j}, built from j = m-1 downward
  Real fact = 1;
  std::vector<Real> facts(m > 0 ? m : 1);
  for (long j = 0; j < m; ++j) {
    facts[j] = fact;
    fact *= (j + 1);
  }
  for (long j = m - 1; j >= 0; --j) {
    poly += t0pow * facts[j];
    t0pow *= t0;
  }
  // t0pow == t0^m now
  return poly + t0pow * exp(-t0) * K;
}

struct CauchyIntegralOptions {
  Real abs_tol;
  Real rel_tol;
};

/// \int_0^\infty t^{alpha-1} e^{-t} / (t^p + w) dt.  With `pv` set, w must be a
/// negative real and the integral is a principal value through t0 = (-w)^{1/p}.
/// A pole close to the positive axis is removed by subtracting
/// c t^m e^{-t} / (t - t0), whose integral is known in closed form.
inline QuadResult cauchy_integral(const Real& p, const Real& alpha, const HPComplex& w, bool pv,
                                  const QuadratureSpec& quad, const CauchyIntegralOptions& opt) {
  const int digits = current_digits();
  if (pv && !(w.im == 0 && w.re < 0)) throw std::invalid_argument("cauchy_integral: PV needs a negative real w");
  const bool p_int = p == floor(p) && p <= 8;
  const long p_i = p_int ? p.convert_to<long>() : 0;
  const Real am1 = alpha - 1;

  // Pole nearest to the positive real axis, at extended precision so that
  // the subtraction stays accurate for nodes very close to it.
  const int hi_digits = 2 * digits + 10;
  HPComplex t0;
  bool subtract = false;
  {
    ScopedPrecision sp(hi_digits);
    if (pv) {
      t0 = HPComplex(exp(log(-w.re) / p));
    } else {
      t0 = exp(log(-w) / p);
    }
    subtract = pv || (t0.re > 0 && abs(t0.im) < t0.re && abs(t0.im) < Real(3) / 2);
  }
  long m = 0;
  HPComplex c;
  if (subtract) {
    Real e = alpha - p;
    m = e > 0 ? floor(e).convert_to<long>() : 0;
    ScopedPrecision sp(hi_digits);
    c = exp((alpha - p - m) * log(t0)) / p;  // residue of the integrand at t0, divided by t0^m e^{-t0}
  }

  const HPComplex t0_w = rounded(t0, digits), c_w = rounded(c, digits);
  auto denom_pow = [&](const Real& t) -> Real {
    if (p_int) {
      Real r = t;
      for (long i = 1; i < p_i; ++i) r *= t;
      return r;
    }
    return exp(p * log(t));
  };
  auto raw = [&](const Real& t) -> HPComplex {
    Real g = exp(am1 * log(t) - t);
    return HPComplex(g) / (HPComplex(denom_pow(t)) + w);
  };
  const Real near_zone = pow10(-5) * (1 + abs(t0_w));
  auto F = [&](const Real& t) -> HPComplex {
    if (!subtract) return raw(t);
    HPComplex d = HPComplex(t) - t0_w;
    Real ad = abs(d);
    if (ad < near_zone) {
      // Both terms are ~1/(t - t0); evaluate at raised precision.
      int extra = std::min(digits + 10, static_cast<int>(std::ceil(-log10_abs(ad))) + 5);
      ScopedPrecision sp(digits + std::max(extra, 5));
      Real tt = t;
      if (ad == 0 || ad < quad.pv_window * pow10(-digits)) tt += quad.pv_window * pow10(-digits);
      HPComplex dd = HPComplex(tt) - t0;
      Real g = exp(am1 * log(tt) - tt);
      HPComplex v = HPComplex(g) / (HPComplex(denom_pow(tt)) + w);
      HPComplex s = c * HPComplex(exp(Real(m) * log(tt) - tt)) / dd;
      return rounded(v - s, digits);
    }
    Real gm = exp(Real(m) * log(t) - t);
    return raw(t) - c_w * HPComplex(gm) / d;
  };

  QuadResult r;
  if (quad.scheme == QuadratureScheme::gauss_laguerre_composite) {
    Real cutoff = std::max(Real(2) * alpha, Real(40));
    if (subtract) cutoff = std::max(cutoff, 2 * t0_w.re + 10);
    r = integrate_half_line_composite(F, cutoff, opt.abs_tol, opt.rel_tol, quad.max_nodes);
  } else {
    r = integrate_half_line(F, opt.abs_tol, opt.rel_tol, quad.max_nodes);
  }
  if (subtract) {
    ScopedPrecision sp(hi_digits);
    HPComplex J = c * exp_cauchy_moment(m, t0, pv);
    r.value += rounded(J, digits);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Terminants

namespace detail {

inline void require_finite(const HPComplex& v, const char* where) { ensure_finite(v, where); }

inline CauchyIntegralOptions terminant_tolerances(const QuadratureSpec& quad, const PrecisionContext& ctx) {
  return {quad.abs_tail_bound, pow10(-(ctx.working_digits() - 2))};
}

/// (-1)^N z^{beta(N-1)} \int_0^\infty t^{pN+q-1} e^{-t} / (t^p + z^{-beta}) dt
/// for z on any sheet (no sector check).
inline EvalReport cauchy_form(const TerminantSpec& spec, const PolarPoint& z, const QuadratureSpec& quad,
                              const PrecisionContext& ctx) {
  const HPComplex w = pow_polar(z, HPComplex(-spec.beta));
  QuadResult r = cauchy_integral(spec.p, spec.p * spec.N + spec.q, w, false, quad, terminant_tolerances(quad, ctx));
  HPComplex pref = pow_polar(z, HPComplex(spec.beta * (spec.N - 1)));
  if (spec.N % 2) pref = -pref;
  EvalReport rep;
  rep.method = EvalMethod::borel;
  rep.value = pref * r.value;
  rep.est_error = abs(pref) * r.est_error;
  rep.nodes_used = r.nodes;
  if (!r.converged) rep.warnings.push_back("quadrature refinement stalled; est_error is the last level difference");
  require_finite(rep.value, "terminant Cauchy integral");
  return rep;
}

}  // namespace detail

/// Jump between the regularised values on consecutive sheets l-1 and l.
inline HPComplex terminant_jump(const TerminantSpec& spec, const PolarPoint& z, long l) {
  const Real p = pi();
  const Real ph = (2 * l - 1) * p / spec.p;
  HPComplex a = pow_polar(z, HPComplex(-spec.beta * spec.q / spec.p)) * expi(spec.q * ph);
  HPComplex x = pow_polar(z, HPComplex(-spec.beta / spec.p)) * expi(ph);
  return HPComplex(Real(0), 2 * p / spec.p) * a * exp(-x);
}

inline HPComplex terminant_jump(const TerminantSpec& spec, const PolarPoint& z, long l, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return terminant_jump(spec, z, l);
}

/// Borel-summed terminant in the primary sector |arg z| < pi/beta.
inline EvalReport terminant_primary(const TerminantSpec& spec, const PolarPoint& z, const QuadratureSpec& quad,
                                    const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  spec.validate();
  quad.validate();
  SectorLocation loc = sector_locate(z.theta, spec.beta, default_line_tolerance(ctx));
  if (loc.M != 0 || loc.on_line) throw SectorError("terminant_primary: arg z must satisfy |arg z| < pi/beta");
  return detail::cauchy_form(spec, z, quad, ctx);
}

namespace detail {

inline EvalReport terminant_sector_impl(const TerminantSpec& spec, const PolarPoint& z, const SectorLocation& loc,
                                        const QuadratureSpec& quad, const PrecisionContext& ctx) {
  if (loc.M == 0) return detail::cauchy_form(spec, z, quad, ctx);
  const Real p = pi();
  const bool lower = loc.side == RotationSide::lower;
  const Real rot = 2 * loc.M * p / spec.beta;
  const PolarPoint zm = z.rotated(lower ? rot : Real(-rot));
  EvalReport rep = detail::cauchy_form(spec, zm, quad, ctx);
  const HPComplex a = pow_polar(zm, HPComplex(-spec.beta * spec.q / spec.p));
  const HPComplex x = pow_polar(zm, HPComplex(-spec.beta / spec.p));
  HPComplex sum;
  for (long j = 1; j <= loc.M; ++j) {
    Real ph = (2 * j - 1) * p / spec.p;
    if (!lower) ph = -ph;
    sum += expi(spec.q * ph) * exp(-(x * expi(ph)));
  }
  HPComplex ex = HPComplex(Real(0), 2 * p / spec.p) * a * sum;
  rep.value += lower ? ex : -ex;
  rep.terms_used = loc.M;
  detail::require_finite(rep.value, "terminant_sector");
  return rep;
}

}  // namespace detail

/// Borel-summed terminant in any Stokes sector (off the lines).
inline EvalReport terminant_sector(const TerminantSpec& spec, const PolarPoint& z, const QuadratureSpec& quad,
                                   const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  spec.validate();
  quad.validate();
  SectorLocation loc = sector_locate(z.theta, spec.beta, default_line_tolerance(ctx));
  if (loc.on_line) throw SectorError("terminant_sector: arg z lies on a Stokes line; use terminant_line");
  if (line_distance(z.theta, spec.beta) <= near_line_threshold()) {
    PrecisionContext raised = ctx.boosted(ctx.guard_digits());
    ScopedPrecision sp2(raised);
    const PolarPoint zr(promoted(z.modulus), promoted(z.theta));
    EvalReport rep = detail::terminant_sector_impl(spec, zr, loc, quad, raised);
    rep.warnings.push_back("phase within 1e-5 pi of a Stokes line; sector form kept at raised precision");
    return rep;
  }
  return detail::terminant_sector_impl(spec, z, loc, quad, ctx);
}

/// Borel-summed terminant on the Stokes line arg z = -(2M+1)pi/beta (lower)
/// or +(2M+1)pi/beta (upper): principal value plus half the residue term.
inline EvalReport terminant_line(const TerminantSpec& spec, const Real& modulus, long M, RotationSide side,
                                 const QuadratureSpec& quad, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  spec.validate();
  quad.validate();
  if (!(modulus > 0)) throw DomainError("terminant_line: modulus must be positive");
  if (M < 0) throw std::invalid_argument("terminant_line: M must be non-negative");
  const Real p = pi();
  const Real w = -exp(-spec.beta * log(modulus));  // -|z|^{-beta}
  QuadResult r = cauchy_integral(spec.p, spec.p * spec.N + spec.q, HPComplex(w), true, quad,
                                 detail::terminant_tolerances(quad, ctx));
  const Real pref = -exp(spec.beta * (spec.N - 1) * log(modulus));
  EvalReport rep;
  rep.method = EvalMethod::borel;
  rep.value = r.value * pref;
  rep.est_error = abs(pref) * r.est_error;
  rep.nodes_used = r.nodes;
  const Real a = exp(-spec.beta * spec.q / spec.p * log(modulus));
  const Real x = exp(-spec.beta / spec.p * log(modulus));
  const Real sgn = side == RotationSide::lower ? 1 : -1;
  HPComplex sum;
  for (long j = 1; j <= M; ++j) {
    Real ph = sgn * 2 * j * p / spec.p;
    sum += expi(spec.q * ph) * exp(-(HPComplex(x) * expi(ph)));
  }
  sum *= Real(2);
  sum += HPComplex(exp(-x));
  rep.value += HPComplex(Real(0), sgn * p / spec.p) * a * sum;
  rep.terms_used = M;
  if (!r.converged) rep.warnings.push_back("quadrature refinement stalled; est_error is the last level difference");
  detail::require_finite(rep.value, "terminant_line");
  return rep;
}

// ---------------------------------------------------------------------------
// Mellin-Barnes

/// \int_{c-i\infty}^{c+i\infty} g(s) ds along Re s = c (ds = i dt).
inline QuadResult mb_line_integral(const std::function<HPComplex(const HPComplex&)>& g, const Real& c,
                                   const QuadratureSpec& quad, const Real& rel_tol, double growth_allowed = 32) {
  RealIntegrand f = [&](const Real& t) { return g(HPComplex(c, t)) * HPComplex(Real(0), Real(1)); };
  return integrate_vertical(f, quad, rel_tol, 400, growth_allowed);
}

/// Default MB offset: midpoint of (max(N-1, -q/p), N).
inline Real terminant_mb_default_offset(const TerminantSpec& spec) {
  Real lo = Real(spec.N - 1);
  Real qp = -spec.q / spec.p;
  if (qp > lo) lo = qp;
  return (lo + spec.N) / 2;
}

/// MB-regularised terminant: \int z^{beta s} Gamma(ps+q) / (e^{-i pi s} - e^{i pi s}) ds.
inline EvalReport terminant_mb(const TerminantSpec& spec, const PolarPoint& z, const QuadratureSpec& quad,
                               const PrecisionContext& ctx, const Real& c) {
  ScopedPrecision sp(ctx);
  spec.validate();
  quad.validate();
  Real lo = Real(spec.N - 1);
  if (-spec.q / spec.p > lo) lo = -spec.q / spec.p;
  if (!(c > lo && c < spec.N)) throw std::invalid_argument("terminant_mb: offset c outside (max(N-1,-q/p), N)");
  const Real p = pi();
  // Exponential rate of the integrand: -(pi(1 + p/2) -+ beta theta)|t|.
  const Real rate = p * (1 + spec.p / 2) - spec.beta * abs(z.theta);
  if (!(rate > 0)) throw DivergenceError("MB form invalid at this phase");
  const HPComplex lz = HPComplex(spec.beta) * z.log();
  const HPComplex ipi(Real(0), p);
  auto g = [&](const HPComplex& s) {
    HPComplex lg = lngamma_principal(s * spec.p + HPComplex(spec.q));
    HPComplex den = exp(-(ipi * s)) - exp(ipi * s);
    return exp(s * lz + lg) / den;
  };
  // |Gamma(ps+q)| carries |t|^{pc+q-1/2}, which rises until the exponential wins.
  const double peak = std::max(0.0, to_double((spec.p * c + spec.q) / rate));
  QuadResult r = mb_line_integral(g, c, quad, pow10(-(ctx.working_digits() - 2)), 2 * peak + 32);
  EvalReport rep;
  rep.method = EvalMethod::mb;
  rep.value = r.value;
  rep.est_error = r.est_error;
  rep.nodes_used = r.nodes;
  detail::require_finite(rep.value, "terminant_mb");
  return rep;
}

inline EvalReport terminant_mb(const TerminantSpec& spec, const PolarPoint& z, const QuadratureSpec& quad,
                               const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return terminant_mb(spec, z, quad, ctx, terminant_mb_default_offset(spec));
}

}  // namespace slg
