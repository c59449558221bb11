// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "slg/slg.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace slg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(const Real& x) { return format_real(x, 3); }

PolarPoint at(const std::string& modulus, const std::string& theta_over_pi) {
  return PolarPoint(parse_real(modulus), pi() * parse_real(theta_over_pi));
}

LnGammaResult assemble(const PolarPoint& z, long N, StirlingMethod m, const PrecisionContext& ctx) {
  StirlingRequest req;
  req.z = z;
  req.N = N;
  req.method = m;
  req.ctx = ctx;
  return lngamma_asymptotic(req);
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int n, const std::string& title, const Outcome& o, bool& all_ok) {
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << o.detail << "]"
            << std::endl;
  all_ok = all_ok && o.pass;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

// ln Gamma(3 e^{i(1/2 + delta) pi}) as published, with the Stokes term for delta > 0.
struct PublishedRow {
  const char* delta;
  const char *re, *im;
  const char *sd_re, *sd_im;
};

const PublishedRow kPublished[] = {
    {"0.1", "-5.1085546405054331385771175", "-2.43504864133618239587613036", "0.0000000146924137960847328",
     "0.00000000724920978735477097"},
    {"-0.1", "-3.1156770612855851062960250", "0.79152717486178700663566144", nullptr, nullptr},
    {"0.01", "-4.4448078360199294879676721", "-0.68426539470619315579497619", "0.0000000054543808883397577",
     "-0.00000000366845661861183983"},
    {"-0.01", "-4.2360547825638102221663061", "-0.35681003461125834209091866", nullptr, nullptr},
    {"0.001", "-4.3531757575591613140088085", "-0.53385166100905755261595669", "0.0000000065016016472424544",
     "-0.00000000038545945628149871"},
    {"-0.001", "-4.3322909095906129602545969", "-0.50110130347126170951651903", nullptr, nullptr},
    {"0.0001", "-4.3438006028809735966127763", "-0.51908338527968766540121412", "0.0000000065123040290213875",
     "-0.00000000003856476898298508"},
    {"-0.0001", "-4.3417121085407199183370966", "-0.51580834470414165478538635", nullptr, nullptr},
    {"0.00005", "-4.3438006028809735966127763", "-0.51908338527968766540121412", "0.0000000065123851251757157",
     "-0.00000000001928245580002624"},
    {"-0.00005", "-4.3422344065179726897501879", "-0.51662687288967352139359494", nullptr, nullptr},
};

std::string theta_of(const char* delta) {
  Real d = parse_real(delta);
  std::ostringstream os;
  os << (Real("0.5") + d).str(20, std::ios_base::fixed);
  return os.str();
}

/// Places after the decimal point in a printed number.
int decimals(const std::string& s) {
  auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

// 1. ln Gamma table, Borel assembly at N = 10, 26 digits on both parts, <= 10 min per row.
Outcome criterion_table() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  Outcome o;
  std::ostringstream d;
  int good = 0;
  double worst_time = 0;
  for (const auto& row : kPublished) {
    auto t0 = Clock::now();
    LnGammaResult r = assemble(at("3", theta_of(row.delta)), 10, StirlingMethod::borel, ctx);
    double secs = seconds_since(t0);
    worst_time = std::max(worst_time, secs);
    int dre = digits_agree(r.value.re, parse_real(row.re), 40);
    int dim = digits_agree(r.value.im, parse_real(row.im), 40);
    bool ok = dre >= 26 && dim >= 26 && secs <= 600;
    if (ok) {
      ++good;
    } else {
      o.pass = false;
      d << "delta=" << row.delta << " digits " << dre << "/" << dim << " in " << secs << " s; ";
    }
  }
  d << good << "/10 rows at >= 26 digits, slowest row " << worst_time << " s";
  o.detail = d.str();
  return o;
}

// 2. Stokes discontinuity of the five upper rows to every printed digit.
Outcome criterion_sd() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  Outcome o;
  std::ostringstream d;
  int good = 0;
  for (const auto& row : kPublished) {
    if (!row.sd_re) continue;
    HPComplex sd = stokes_discontinuity(at("3", theta_of(row.delta)), 0, SDWeight::full, ctx);
    // one unit in the last printed place: the table truncates
    Real ere = abs(sd.re - parse_real(row.sd_re)) / pow10(-decimals(row.sd_re));
    Real eim = abs(sd.im - parse_real(row.sd_im)) / pow10(-decimals(row.sd_im));
    if (ere < 1 && eim < 1) {
      ++good;
    } else {
      o.pass = false;
      d << "delta=" << row.delta << " off by " << sci(ere) << "/" << sci(eim) << " units; ";
    }
  }
  d << good << "/5 rows";
  o.detail = d.str();
  return o;
}

// 3. N in {4, 10, 16} at delta = 1/100 agree pairwise to 1e-25.
Outcome criterion_truncation() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  std::vector<HPComplex> v;
  for (long N : {4L, 10L, 16L}) v.push_back(assemble(at("3", "0.51"), N, StirlingMethod::borel, ctx).value);
  Real worst = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) worst = std::max(worst, abs(v[i] - v[j]));
  return {worst < pow10(-25), "max pairwise " + sci(worst)};
}

// 4. |z| = 1/10 against the reference to 1e-25, <= 2 min per point.
Outcome criterion_small_modulus() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  Outcome o;
  std::ostringstream d;
  for (const char* th : {"0", "0.3", "0.6"}) {
    PolarPoint z = at("0.1", th);
    auto t0 = Clock::now();
    LnGammaResult r = assemble(z, optimal_truncation(z.modulus), StirlingMethod::borel, ctx);
    double secs = seconds_since(t0);
    Real err = abs(r.value - lngamma_reference(z.to_cartesian(), ctx));
    bool ok = err < pow10(-25) && secs <= 120;
    o.pass = o.pass && ok;
    d << "theta/pi=" << th << ": " << sci(err) << " in " << secs << " s; ";
  }
  o.detail = d.str();
  return o;
}

// 5. Borel, MB and incomplete-gamma forms pairwise < 1e-25 on the grid; MB <= 10 s per point.
Outcome criterion_cross_method() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  Outcome o;
  std::ostringstream d;
  Real worst = 0;
  double mb_slowest = 0;
  for (const char* r : {"0.1", "3", "8"}) {
    for (const char* th : {"0", "0.3", "0.45", "0.6"}) {
      PolarPoint z = at(r, th);
      const long N = optimal_truncation(z.modulus);
      std::vector<HPComplex> v;
      for (StirlingMethod m : {StirlingMethod::borel, StirlingMethod::mb, StirlingMethod::paris_gamma}) {
        auto t0 = Clock::now();
        v.push_back(assemble(z, N, m, ctx).value);
        double secs = seconds_since(t0);
        if (m == StirlingMethod::mb) {
          mb_slowest = std::max(mb_slowest, secs);
          if (secs > 10) {
            o.pass = false;
            d << "MB at |z|=" << r << ", theta/pi=" << th << " took " << secs << " s; ";
          }
        }
      }
      Real point = 0;
      for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) point = std::max(point, abs(v[i] - v[j]));
      if (!(point < pow10(-25))) {
        o.pass = false;
        d << "|z|=" << r << ", theta/pi=" << th << " spread " << sci(point) << "; ";
      }
      worst = std::max(worst, point);
    }
  }
  d << "max spread " << sci(worst) << ", slowest MB point " << mb_slowest << " s";
  o.detail = d.str();
  return o;
}

// 6. On the line: mean of delta = +-1e-4 to 1e-8, reference to 1e-25.
Outcome criterion_line() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  HPComplex line = assemble(at("3", "0.5"), 10, StirlingMethod::borel, ctx).value;
  HPComplex up = assemble(at("3", "0.5001"), 10, StirlingMethod::borel, ctx).value;
  HPComplex dn = assemble(at("3", "0.4999"), 10, StirlingMethod::borel, ctx).value;
  Real e_mean = abs(line - (up + dn) / Real(2));
  Real e_ref = abs(line - lngamma_reference(HPComplex(Real(0), Real(3)), ctx));
  // the same symmetric mean taken from the reference alone: its offset is the
  // second-order term of the analytic function, not an artefact of the line form
  auto ref_at = [&](const char* t) { return lngamma_reference(at("3", t).to_cartesian(), ctx); };
  Real ref_mean = abs(ref_at("0.5") - (ref_at("0.5001") + ref_at("0.4999")) / Real(2));
  return {e_mean < pow10(-8) && e_ref < pow10(-25), "vs one-sided mean " + sci(e_mean) + ", vs reference " +
                                                        sci(e_ref) + ", reference's own one-sided mean offset " +
                                                        sci(ref_mean)};
}

// 7. Smoothed multiplier at |z| = 8 under the default omega rule, seven printed places.
Outcome criterion_smoothed() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  struct Spot {
    const char *theta, *re, *im;
  };
  const Spot spots[] = {{"0.475", "0.2894310", "-0.0182669"}, {"0.525", "0.7105689", "-0.0182669"}};
  Outcome o;
  std::ostringstream d;
  for (const auto& s : spots) {
    PolarPoint z = at("8", s.theta);
    HPComplex v = smoothed_multiplier(z, optimal_truncation(z.modulus), OmegaRule::theta_minus_half_pi, ctx);
    HPComplex ex = exact_multiplier(z, optimal_truncation(z.modulus), ctx);
    Real err = std::max(abs(v.re - parse_real(s.re)), abs(v.im - parse_real(s.im)));
    o.pass = o.pass && err < pow10(-7);
    d << "theta/pi=" << s.theta << ": smoothed " << v.re.str(10) << " " << v.im.str(10) << "i (off " << sci(err)
      << "), exact " << ex.re.str(10) << " " << ex.im.str(10) << "i; ";
  }
  o.detail = d.str();
  return o;
}

// 8. Terminant property suite.
Outcome criterion_terminant() {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  const QuadratureSpec quad = QuadratureSpec::defaults(ctx);
  const Real p = pi();
  Outcome o;
  std::ostringstream d;
  auto fail = [&](const std::string& what) {
    o.pass = false;
    d << what << "; ";
  };

  // (a) (1/2 pi i) \int Gamma(s) z^{-s} ds = e^{-z}
  Real worst_a = 0;
  for (const HPComplex& z : {HPComplex(1), polar(Real(2), p / 4)}) {
    const HPComplex lz = log(z);
    auto g = [&](const HPComplex& s) { return exp(lngamma_principal(s) - s * lz) / HPComplex(Real(0), 2 * p); };
    QuadResult r = mb_line_integral(g, Real("0.5"), quad, pow10(-(ctx.working_digits() - 2)));
    worst_a = std::max(worst_a, abs(r.value - exp(-z)));
  }
  if (!(worst_a < pow10(-28))) fail("(a) " + sci(worst_a));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_spec = [&]() {
    for (;;) {
      TerminantSpec s{Real(0.5 + 1.5 * u(rng)), Real(-0.4 + 1.4 * u(rng)), Real(0.5 + 1.5 * u(rng)),
                      1 + static_cast<long>(4 * u(rng))};
      if (s.p * s.N + s.q > 0) return s;
    }
  };

  // (b) sector form minus Cauchy form is the sum of the closed-form jumps
  Real worst_b = 0;
  for (int i = 0; i < 10; ++i) {
    TerminantSpec s = random_spec();
    const long M = 1 + static_cast<long>(2 * u(rng));
    // strictly inside (2M-1, 2M+1) pi / beta, away from both lines
    const Real th = (2 * M - 1 + Real(0.1 + 1.8 * u(rng))) * p / s.beta;
    PolarPoint z(Real(0.7 + 2.5 * u(rng)), th);
    HPComplex sec = terminant_sector(s, z, quad, ctx).value;
    HPComplex cau = detail::cauchy_form(s, z, quad, ctx).value;
    HPComplex jumps;
    for (long l = 1; l <= M; ++l) jumps += terminant_jump(s, z, l, ctx);
    Real e = abs(cau - sec - jumps) / std::max(Real(1), abs(jumps));
    worst_b = std::max(worst_b, e);
  }
  if (!(worst_b < pow10(-25))) fail("(b) " + sci(worst_b));

  // (c) Borel and MB forms of random terminants
  Real worst_c = 0;
  for (int done = 0; done < 20;) {
    TerminantSpec s = random_spec();
    const Real lim = p * (1 + s.p / 2) / s.beta;
    const Real th = Real((2 * u(rng) - 1) * 0.9) * lim;
    PolarPoint z(Real(0.5 + 3 * u(rng)), th);
    if (line_distance(th, s.beta) < Real("0.05")) continue;
    HPComplex a = terminant_sector(s, z, quad, ctx).value;
    HPComplex b = terminant_mb(s, z, quad, ctx).value;
    worst_c = std::max(worst_c, abs(a - b) / std::max(Real(1), abs(a)));
    ++done;
  }
  if (!(worst_c < pow10(-25))) fail("(c) " + sci(worst_c));

  // (d) regularised series equal their partial sums where they converge
  Real worst_d = 0;
  for (int i = 0; i < 10; ++i) {
    HPComplex z = polar(Real(0.8 * u(rng)), Real(2 * M_PI * u(rng)));
    const long N = 1 + static_cast<long>(5 * u(rng));
    HPComplex geo, logs, pw = pow(z, N), pz = z;
    for (int k = 0; k < 2000; ++k) {
      geo += pw;
      pw *= z;
    }
    for (int k = 1; k < 2000; ++k) {
      HPComplex t = pz / Real(k);
      logs += (k % 2) ? t : -t;
      pz *= z;
    }
    worst_d = std::max(worst_d, abs(geometric_regularised(z, N) - geo));
    worst_d = std::max(worst_d, abs(log_series_regularised(z) - logs));
  }
  if (!(worst_d < pow10(-27))) fail("(d) " + sci(worst_d));

  // the 1e-5 regime is reported, not gated
  LnGammaResult near = assemble(at("3", "0.50001"), 10, StirlingMethod::borel, ctx);
  if (near.report.warnings.empty()) fail("no warning at delta = 1e-5");

  d << "(a) " << sci(worst_a) << ", (b) " << sci(worst_b) << ", (c) " << sci(worst_c) << ", (d) " << sci(worst_d)
    << ", near-line warning " << (near.report.warnings.empty() ? "missing" : "emitted");
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments pick criteria by number; none runs all of them
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> all = {
      {"ln Gamma table, Borel assembly", criterion_table},
      {"Stokes discontinuity table", criterion_sd},
      {"truncation independence", criterion_truncation},
      {"small modulus", criterion_small_modulus},
      {"cross-method agreement", criterion_cross_method},
      {"Stokes line", criterion_line},
      {"smoothed multiplier spot values", criterion_smoothed},
      {"terminant properties", criterion_terminant},
  };
  bool ok = true;
  for (int n = 1; n <= static_cast<int>(all.size()); ++n) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), n) == pick.end()) continue;
    report(n, all[n - 1].first, guarded(all[n - 1].second), ok);
  }
  return ok ? 0 : 1;
}
