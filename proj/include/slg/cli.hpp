// Command implementations behind the slg executable.  Each command renders
// to a stream and returns the process exit status: 0 success, 2 when a
// numeric acceptance check fails, 1 for usage errors.
#pragma once

#include "slg/report.hpp"
#include "slg/stirling.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slg {

enum class Command { eval, table, multiplier, crosscheck };
enum class OutputFormat { text, csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAcceptance = 2;

struct CliConfig {
  Command command = Command::eval;
  std::string modulus = "3";
  std::string theta_over_pi = "0";
  int digits = 30;
  std::string N = "auto";
  std::string method = "borel";  // borel, mb, paris, all
  OutputFormat format = OutputFormat::text;
  long n_cap = 100000;

  // multiplier sweep
  std::string from = "0.325";
  std::string to = "0.750";
  std::string step = "0.025";
  bool exact = false;

  // crosscheck grid
  std::vector<std::string> grid_moduli{"0.1", "3", "8"};
  std::vector<std::string> grid_thetas{"0", "0.3", "0.45", "0.6"};

  void validate() const {
    if (digits < 10 || digits > 200) throw std::invalid_argument("digits must lie in [10, 200]");
    if (n_cap < 1) throw std::invalid_argument("n-cap must be positive");
    if (method != "borel" && method != "mb" && method != "paris" && method != "all")
      throw std::invalid_argument("method must be one of borel, mb, paris, all");
    if (N != "auto") {
      long n = 0;
      try {
        n = std::stol(N);
      } catch (const std::exception&) {
        throw std::invalid_argument("N must be a positive integer or 'auto'");
      }
      if (n < 1) throw std::invalid_argument("N must be a positive integer or 'auto'");
    }
    ScopedPrecision sp(digits + 10);
    Real t = parse_real(theta_over_pi);
    if (!(t > -1 && t <= 1)) throw std::invalid_argument("theta-over-pi must lie in (-1, 1]");
    if (!(parse_real(modulus) > 0)) throw std::invalid_argument("modulus must be positive");
  }
};

/// Exact value of a decimal string such as "-0.00005" or "1/20000".
inline Rational parse_decimal_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(parse_decimal_rational(text.substr(0, slash))) / parse_decimal_rational(text.substr(slash + 1));
  }
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  auto dot = s.find('.');
  std::string digits = s, frac;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot);
    frac = s.substr(dot + 1);
  }
  std::string all = digits + frac;
  if (all.empty() || all.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not an exact decimal: '" + text + "'");
  // a leading zero would make the string octal
  all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
  BigInt num(all);
  BigInt den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  Rational q(num, den);
  return neg ? Rational(-q) : q;
}

/// Decimal text of a rational with at most `max_frac` fractional digits,
/// trailing zeros removed.
inline std::string rational_to_decimal(const Rational& q, int max_frac = 12) {
  Rational a = q < 0 ? Rational(-q) : q;
  BigInt scale = 1;
  for (int i = 0; i < max_frac; ++i) scale *= 10;
  Rational scaled = a * scale;
  BigInt n = numerator(scaled) / denominator(scaled);
  std::string digits = n.str();
  if (static_cast<int>(digits.size()) <= max_frac) digits = std::string(max_frac + 1 - digits.size(), '0') + digits;
  std::string ip = digits.substr(0, digits.size() - max_frac);
  std::string fp = digits.substr(digits.size() - max_frac);
  while (!fp.empty() && fp.back() == '0') fp.pop_back();
  std::string out = (q < 0 ? "-" : "") + ip;
  if (!fp.empty()) out += "." + fp;
  return out;
}

inline std::vector<StirlingMethod> methods_of(const std::string& m) {
  if (m == "borel") return {StirlingMethod::borel};
  if (m == "mb") return {StirlingMethod::mb};
  if (m == "paris") return {StirlingMethod::paris_gamma};
  return {StirlingMethod::borel, StirlingMethod::mb, StirlingMethod::paris_gamma};
}

inline long resolve_N(const CliConfig& cfg, const Real& modulus) {
  return cfg.N == "auto" ? optimal_truncation(modulus) : std::stol(cfg.N);
}

inline PrecisionContext context_of(const CliConfig& cfg) { return PrecisionContext(cfg.digits); }

/// theta = pi * (theta/pi) at the working precision.
inline PolarPoint point_of(const std::string& modulus, const Rational& theta_over_pi, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return PolarPoint(parse_real(modulus), pi() * to_real(theta_over_pi));
}

inline EvalRecord make_eval_record(const CliConfig& cfg, StirlingMethod m, long N, const LnGammaResult& r,
                                   const std::optional<HPComplex>& oracle) {
  EvalRecord rec;
  const int d = cfg.digits;
  rec.method = to_string(m);
  rec.modulus = cfg.modulus;
  rec.theta_over_pi = cfg.theta_over_pi;
  rec.N = N;
  rec.digits = d;
  rec.value = ComplexText::of(r.value, d);
  rec.F = ComplexText::of(r.components.F, d);
  rec.TS = ComplexText::of(r.components.TS, d);
  rec.remainder = ComplexText::of(r.components.remainder, d);
  rec.SD = ComplexText::of(r.components.SD, d);
  rec.est_error = format_real(r.report.est_error, 3);
  if (oracle) rec.oracle_diff = format_real(abs(r.value - *oracle), 3);
  rec.warnings = r.report.warnings;
  return rec;
}

namespace detail {

inline std::string complex_text(const ComplexText& c) {
  std::string im = c.im;
  std::string sign = " + ";
  if (!im.empty() && im[0] == '-') {
    sign = " - ";
    im = im.substr(1);
  }
  return c.re + sign + im + " i";
}

inline void render_eval_text(std::ostream& os, const EvalRecord& r) {
  os << "method      " << r.method << "\n"
     << "z           " << r.modulus << " exp(i pi " << r.theta_over_pi << ")\n"
     << "N           " << r.N << "\n"
     << "value       " << complex_text(r.value) << "\n"
     << "  F         " << complex_text(r.F) << "\n"
     << "  TS        " << complex_text(r.TS) << "\n"
     << "  remainder " << complex_text(r.remainder) << "\n"
     << "  SD        " << complex_text(r.SD) << "\n"
     << "est_error   " << r.est_error << "\n";
  if (r.oracle_diff) os << "oracle_diff " << *r.oracle_diff << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
}

inline std::string eval_csv_header() {
  return "method,N,re,im,F_re,F_im,TS_re,TS_im,remainder_re,remainder_im,SD_re,SD_im,est_error,oracle_diff";
}

inline std::string eval_csv(const EvalRecord& r) {
  std::ostringstream os;
  os << r.method << ',' << r.N << ',' << r.value.re << ',' << r.value.im << ',' << r.F.re << ',' << r.F.im << ','
     << r.TS.re << ',' << r.TS.im << ',' << r.remainder.re << ',' << r.remainder.im << ',' << r.SD.re << ','
     << r.SD.im << ',' << r.est_error << ',' << r.oracle_diff.value_or("");
  return os.str();
}

}  // namespace detail

inline int cmd_eval(const CliConfig& cfg, std::ostream& os) {
  cfg.validate();
  const PrecisionContext ctx = context_of(cfg);
  ScopedPrecision sp(ctx);
  const PolarPoint z = point_of(cfg.modulus, parse_decimal_rational(cfg.theta_over_pi), ctx);
  const long N = resolve_N(cfg, z.modulus);
  std::optional<HPComplex> oracle;
  if (z.theta > -pi() && z.theta <= pi()) oracle = lngamma_reference(z.to_cartesian(), ctx);

  std::vector<EvalRecord> recs;
  std::vector<HPComplex> values;
  for (StirlingMethod m : methods_of(cfg.method)) {
    StirlingRequest req;
    req.z = z;
    req.N = N;
    req.method = m;
    req.n_sum_cap = cfg.n_cap;
    req.ctx = ctx;
    LnGammaResult r = lngamma_asymptotic(req);
    recs.push_back(make_eval_record(cfg, m, N, r, oracle));
    values.push_back(r.value);
  }
  Real max_delta = 0;
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j) max_delta = std::max(max_delta, abs(values[i] - values[j]));

  switch (cfg.format) {
    case OutputFormat::text:
      for (size_t i = 0; i < recs.size(); ++i) {
        if (i) os << "\n";
        detail::render_eval_text(os, recs[i]);
      }
      if (recs.size() > 1) os << "\nmax pairwise delta " << format_real(max_delta, 3) << "\n";
      break;
    case OutputFormat::csv:
      os << detail::eval_csv_header() << "\n";
      for (const auto& r : recs) os << detail::eval_csv(r) << "\n";
      break;
    case OutputFormat::json: {
      nlohmann::json j;
      if (recs.size() == 1) {
        j = recs.front();
      } else {
        j["results"] = recs;
        j["max_pairwise_delta"] = format_real(max_delta, 3);
      }
      os << j.dump(2) << "\n";
      break;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Table of ln Gamma(3 e^{i(1/2 + delta) pi})

inline const std::vector<std::string>& table_deltas() {
  static const std::vector<std::string> d{"1/10",    "-1/10",    "1/100",   "-1/100",    "1/1000",
                                          "-1/1000", "1/10000", "-1/10000", "1/20000", "-1/20000"};
  return d;
}

/// Rows pass with at least this many digits against the reference.
inline constexpr int kTableDigitsRequired = 26;

inline TableRow table_row(const CliConfig& cfg, const std::string& delta, StirlingMethod m) {
  const PrecisionContext ctx = context_of(cfg);
  ScopedPrecision sp(ctx);
  TableRow row;
  row.delta = delta;
  row.method = to_string(m);
  Rational t = Rational(1, 2) + parse_decimal_rational(delta);
  const PolarPoint z = point_of(cfg.modulus, t, ctx);
  HPComplex ref = lngamma_reference(z.to_cartesian(), ctx);
  row.reference = ComplexText::of(ref, cfg.digits);
  try {
    StirlingRequest req;
    req.z = z;
    req.N = resolve_N(cfg, z.modulus);
    req.method = m;
    req.n_sum_cap = cfg.n_cap;
    req.ctx = ctx;
    LnGammaResult r = lngamma_asymptotic(req);
    row.value = ComplexText::of(r.value, cfg.digits);
    if (t > Rational(1, 2)) row.sd = ComplexText::of(r.components.SD, cfg.digits);
    row.digits_agree = std::min(digits_agree(r.value.re, ref.re, cfg.digits), digits_agree(r.value.im, ref.im, cfg.digits));
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline int cmd_table(const CliConfig& cfg, std::ostream& os) {
  cfg.validate();
  std::vector<TableRow> rows;
  // Rows are evaluated in input order; the precision state is per-thread
  // global, so the rows share one thread.
  for (StirlingMethod m : methods_of(cfg.method))
    for (const auto& d : table_deltas()) rows.push_back(table_row(cfg, d, m));
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.error.empty() && r.digits_agree >= kTableDigitsRequired;
  switch (cfg.format) {
    case OutputFormat::csv:
      os << table_csv_header() << "\n";
      for (const auto& r : rows) os << to_csv(r) << "\n";
      break;
    case OutputFormat::json:
      os << nlohmann::json(rows).dump(2) << "\n";
      break;
    case OutputFormat::text:
      for (const auto& r : rows) {
        os << std::setw(9) << r.delta << "  " << std::setw(5) << r.method << "  ";
        if (!r.error.empty()) {
          os << "FAILED: " << r.error << "\n";
          continue;
        }
        os << detail::complex_text(r.value) << "  digits " << r.digits_agree << "\n";
        if (r.sd) os << std::string(18, ' ') << "SD " << detail::complex_text(*r.sd) << "\n";
      }
      break;
  }
  return ok ? kExitOk : kExitAcceptance;
}

// ---------------------------------------------------------------------------
// Multiplier sweep

inline std::string conventional_text(const Rational& s) {
  if (s == 0) return "0";
  if (s == 1) return "1";
  return "0.5";
}

inline std::vector<MultiplierRow> multiplier_rows(const CliConfig& cfg) {
  const PrecisionContext ctx = context_of(cfg);
  ScopedPrecision sp(ctx);
  const Rational from = parse_decimal_rational(cfg.from), to = parse_decimal_rational(cfg.to),
                 step = parse_decimal_rational(cfg.step);
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  const Real modulus = parse_real(cfg.modulus);
  const long N0 = resolve_N(cfg, modulus);
  std::vector<MultiplierRow> rows;
  for (Rational t = from; t <= to; t += step) {
    const PolarPoint z = point_of(cfg.modulus, t, ctx);
    MultiplierRow row;
    row.theta_over_pi = rational_to_decimal(t);
    // Exact on-line test: theta/pi is rational here.
    Rational s = abs(t) == Rational(1, 2) ? Rational(1, 2) : (abs(t) < Rational(1, 2) ? Rational(0) : Rational(1));
    row.conventional = conventional_text(s);
    if (modulus >= 1) {
      row.smoothed = ComplexText::of(smoothed_multiplier(z, N0, OmegaRule::theta_minus_half_pi, ctx), cfg.digits);
    }
    if (cfg.exact) row.exact = ComplexText::of(exact_multiplier(z, N0, ctx), cfg.digits);
    rows.push_back(row);
  }
  return rows;
}

inline int cmd_multiplier(const CliConfig& cfg, std::ostream& os) {
  cfg.validate();
  std::vector<MultiplierRow> rows = multiplier_rows(cfg);
  switch (cfg.format) {
    case OutputFormat::json:
      os << nlohmann::json(rows).dump(2) << "\n";
      break;
    case OutputFormat::csv:
    case OutputFormat::text:
      os << "theta_over_pi,S_conventional,S_smoothed_re,S_smoothed_im";
      if (cfg.exact) os << ",S_exact_re,S_exact_im";
      os << "\n";
      for (const auto& r : rows) {
        os << r.theta_over_pi << ',' << r.conventional << ',' << (r.smoothed ? r.smoothed->re : "") << ','
           << (r.smoothed ? r.smoothed->im : "");
        if (cfg.exact) os << ',' << r.exact->re << ',' << r.exact->im;
        os << "\n";
      }
      break;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Method cross-check

inline CrosscheckRow crosscheck_point(const CliConfig& cfg, const std::string& modulus, const std::string& theta) {
  const PrecisionContext ctx = context_of(cfg);
  ScopedPrecision sp(ctx);
  CrosscheckRow row;
  row.modulus = modulus;
  row.theta_over_pi = theta;
  const PolarPoint z = point_of(modulus, parse_decimal_rational(theta), ctx);
  row.N = resolve_N(cfg, z.modulus);
  std::vector<HPComplex> values;
  bool all_ok = true;
  for (StirlingMethod m : methods_of("all")) {
    CrosscheckEntry e;
    e.method = to_string(m);
    auto t0 = std::chrono::steady_clock::now();
    try {
      StirlingRequest req;
      req.z = z;
      req.N = row.N;
      req.method = m;
      req.n_sum_cap = cfg.n_cap;
      req.ctx = ctx;
      LnGammaResult r = lngamma_asymptotic(req);
      e.value = ComplexText::of(r.value, cfg.digits);
      values.push_back(r.value);
    } catch (const std::exception& ex) {
      e.error = ex.what();
      all_ok = false;
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.entries.push_back(e);
  }
  Real max_delta = 0;
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j) max_delta = std::max(max_delta, abs(values[i] - values[j]));
  row.max_delta = format_real(max_delta, 3);
  row.pass = all_ok && max_delta < pow10(-(cfg.digits - 5));
  return row;
}

inline int cmd_crosscheck(const CliConfig& cfg, std::ostream& os) {
  cfg.validate();
  std::vector<CrosscheckRow> rows;
  for (const auto& r : cfg.grid_moduli)
    for (const auto& t : cfg.grid_thetas) rows.push_back(crosscheck_point(cfg, r, t));
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  switch (cfg.format) {
    case OutputFormat::json:
      os << nlohmann::json(rows).dump(2) << "\n";
      break;
    case OutputFormat::csv:
      os << "modulus,theta_over_pi,N,method,re,im,seconds,error,max_delta,pass\n";
      for (const auto& r : rows)
        for (const auto& e : r.entries)
          os << r.modulus << ',' << r.theta_over_pi << ',' << r.N << ',' << e.method << ',' << e.value.re << ','
             << e.value.im << ',' << std::fixed << std::setprecision(3) << e.seconds << std::defaultfloat << ','
             << e.error << ',' << r.max_delta << ',' << (r.pass ? "yes" : "no") << "\n";
      break;
    case OutputFormat::text:
      for (const auto& r : rows) {
        os << "|z| = " << r.modulus << ", theta/pi = " << r.theta_over_pi << ", N = " << r.N << ": max delta "
           << r.max_delta << (r.pass ? "" : "  FAIL") << "\n";
        for (const auto& e : r.entries) {
          os << "  " << std::setw(5) << e.method << std::fixed << std::setprecision(2) << std::setw(8) << e.seconds
             << std::defaultfloat << " s  ";
          if (e.error.empty()) os << detail::complex_text(e.value) << "\n";
          else os << "error: " << e.error << "\n";
        }
      }
      break;
  }
  return ok ? kExitOk : kExitAcceptance;
}

inline int run_command(const CliConfig& cfg, std::ostream& os) {
  switch (cfg.command) {
    case Command::eval: return cmd_eval(cfg, os);
    case Command::table: return cmd_table(cfg, os);
    case Command::multiplier: return cmd_multiplier(cfg, os);
    case Command::crosscheck: return cmd_crosscheck(cfg, os);
  }
  return kExitUsage;
}

}  // namespace slg
