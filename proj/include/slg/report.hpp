// Plain records for the command-line reports, with text/CSV/JSON rendering.
// Numbers travel as decimal strings so that JSON round-trips are exact.
#pragma once

#include "slg/complex.hpp"
#include "slg/precision.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <ios>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace slg {

/// x with exactly `digits` significant figures in scientific notation.
inline std::string format_real(const Real& x, int digits) {
  if (digits < 1) digits = 1;
  return x.str(digits - 1, std::ios_base::scientific);
}

/// Number of leading significant digits on which `computed` agrees with the
/// printed reference `ref`: the error is below one unit in that place, which
/// accepts references that were truncated rather than rounded.  Capped at `cap`.
inline int digits_agree(const Real& computed, const Real& ref, int cap) {
  Real diff = abs(computed - ref);
  if (diff == 0) return cap;
  if (ref == 0) return 0;
  double lead = std::floor(log10_abs(ref));
  double n = std::ceil(lead + 1 - log10_abs(diff)) - 1;
  if (n < 0) return 0;
  return static_cast<int>(std::min<double>(n, cap));
}

/// Significant digits in a printed decimal such as "-4.4448078360199294879676721".
inline int printed_significant_digits(const std::string& s) {
  int n = 0;
  bool started = false;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (c != '0') started = true;
    if (started) ++n;
  }
  return n;
}

struct ComplexText {
  std::string re, im;

  static ComplexText of(const HPComplex& z, int digits) { return {format_real(z.re, digits), format_real(z.im, digits)}; }
  friend bool operator==(const ComplexText&, const ComplexText&) = default;
};

inline void to_json(nlohmann::json& j, const ComplexText& c) { j = nlohmann::json{{"re", c.re}, {"im", c.im}}; }
inline void from_json(const nlohmann::json& j, ComplexText& c) {
  j.at("re").get_to(c.re);
  j.at("im").get_to(c.im);
}

struct EvalRecord {
  std::string method;
  std::string modulus;
  std::string theta_over_pi;
  long N = 0;
  int digits = 0;
  ComplexText value;
  ComplexText F, TS, remainder, SD;
  std::string est_error;
  std::optional<std::string> oracle_diff;
  std::vector<std::string> warnings;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

inline void to_json(nlohmann::json& j, const EvalRecord& r) {
  j = nlohmann::json{{"method", r.method},
                     {"modulus", r.modulus},
                     {"theta_over_pi", r.theta_over_pi},
                     {"N", r.N},
                     {"digits", r.digits},
                     {"value", r.value},
                     {"components", {{"F", r.F}, {"TS", r.TS}, {"remainder", r.remainder}, {"SD", r.SD}}},
                     {"est_error", r.est_error},
                     {"warnings", r.warnings}};
  if (r.oracle_diff) j["oracle_diff"] = *r.oracle_diff;
}

inline void from_json(const nlohmann::json& j, EvalRecord& r) {
  j.at("method").get_to(r.method);
  j.at("modulus").get_to(r.modulus);
  j.at("theta_over_pi").get_to(r.theta_over_pi);
  j.at("N").get_to(r.N);
  j.at("digits").get_to(r.digits);
  j.at("value").get_to(r.value);
  const auto& c = j.at("components");
  c.at("F").get_to(r.F);
  c.at("TS").get_to(r.TS);
  c.at("remainder").get_to(r.remainder);
  c.at("SD").get_to(r.SD);
  j.at("est_error").get_to(r.est_error);
  j.at("warnings").get_to(r.warnings);
  if (j.contains("oracle_diff")) r.oracle_diff = j.at("oracle_diff").get<std::string>();
  else r.oracle_diff.reset();
}

struct TableRow {
  std::string delta;
  std::string method;
  ComplexText value;
  std::optional<ComplexText> sd;
  int digits_agree = 0;
  ComplexText reference;
  std::string error;  // non-empty when the row failed to evaluate

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline void to_json(nlohmann::json& j, const TableRow& r) {
  j = nlohmann::json{{"delta", r.delta},   {"method", r.method},       {"value", r.value},
                     {"digits_agree", r.digits_agree}, {"reference", r.reference}, {"error", r.error}};
  j["sd"] = r.sd ? nlohmann::json(*r.sd) : nlohmann::json(nullptr);
}

inline void from_json(const nlohmann::json& j, TableRow& r) {
  j.at("delta").get_to(r.delta);
  j.at("method").get_to(r.method);
  j.at("value").get_to(r.value);
  j.at("digits_agree").get_to(r.digits_agree);
  j.at("reference").get_to(r.reference);
  j.at("error").get_to(r.error);
  if (j.at("sd").is_null()) r.sd.reset();
  else r.sd = j.at("sd").get<ComplexText>();
}

inline std::string table_csv_header() { return "delta,method,re,im,sd_re,sd_im,digits_agree,ref_re,ref_im"; }

inline std::string to_csv(const TableRow& r) {
  std::ostringstream os;
  os << r.delta << ',' << r.method << ',' << r.value.re << ',' << r.value.im << ',' << (r.sd ? r.sd->re : "")
     << ',' << (r.sd ? r.sd->im : "") << ',' << r.digits_agree << ',' << r.reference.re << ','
     << r.reference.im;
  return os.str();
}

struct MultiplierRow {
  std::string theta_over_pi;
  std::string conventional;
  std::optional<ComplexText> smoothed;
  std::optional<ComplexText> exact;

  friend bool operator==(const MultiplierRow&, const MultiplierRow&) = default;
};

inline void to_json(nlohmann::json& j, const MultiplierRow& r) {
  j = nlohmann::json{{"theta_over_pi", r.theta_over_pi}, {"conventional", r.conventional}};
  j["smoothed"] = r.smoothed ? nlohmann::json(*r.smoothed) : nlohmann::json(nullptr);
  if (r.exact) j["exact"] = *r.exact;
}

inline void from_json(const nlohmann::json& j, MultiplierRow& r) {
  j.at("theta_over_pi").get_to(r.theta_over_pi);
  j.at("conventional").get_to(r.conventional);
  if (j.at("smoothed").is_null()) r.smoothed.reset();
  else r.smoothed = j.at("smoothed").get<ComplexText>();
  if (j.contains("exact")) r.exact = j.at("exact").get<ComplexText>();
  else r.exact.reset();
}

struct CrosscheckEntry {
  std::string method;
  ComplexText value;
  double seconds = 0;
  std::string error;

  friend bool operator==(const CrosscheckEntry&, const CrosscheckEntry&) = default;
};

struct CrosscheckRow {
  std::string modulus;
  std::string theta_over_pi;
  long N = 0;
  std::vector<CrosscheckEntry> entries;
  std::string max_delta;
  bool pass = false;

  friend bool operator==(const CrosscheckRow&, const CrosscheckRow&) = default;
};

inline void to_json(nlohmann::json& j, const CrosscheckEntry& e) {
  j = nlohmann::json{{"method", e.method}, {"value", e.value}, {"seconds", e.seconds}, {"error", e.error}};
}
inline void from_json(const nlohmann::json& j, CrosscheckEntry& e) {
  j.at("method").get_to(e.method);
  j.at("value").get_to(e.value);
  j.at("seconds").get_to(e.seconds);
  j.at("error").get_to(e.error);
}
inline void to_json(nlohmann::json& j, const CrosscheckRow& r) {
  j = nlohmann::json{{"modulus", r.modulus},     {"theta_over_pi", r.theta_over_pi}, {"N", r.N},
                     {"entries", r.entries},     {"max_delta", r.max_delta},         {"pass", r.pass}};
}
inline void from_json(const nlohmann::json& j, CrosscheckRow& r) {
  j.at("modulus").get_to(r.modulus);
  j.at("theta_over_pi").get_to(r.theta_over_pi);
  j.at("N").get_to(r.N);
  j.at("entries").get_to(r.entries);
  j.at("max_delta").get_to(r.max_delta);
  j.at("pass").get_to(r.pass);
}

}  // namespace slg
