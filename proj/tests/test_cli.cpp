#include "slg/cli.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace slg;

namespace {

template <class T>
T round_trip(const T& x) {
  return nlohmann::json::parse(nlohmann::json(x).dump()).get<T>();
}

CliConfig eval_config(const std::string& modulus, const std::string& theta) {
  CliConfig cfg;
  cfg.command = Command::eval;
  cfg.modulus = modulus;
  cfg.theta_over_pi = theta;
  return cfg;
}

}  // namespace

TEST_CASE("exact decimal parsing", "[cli]") {
  CHECK(parse_decimal_rational("0.51") == Rational(51, 100));
  CHECK(parse_decimal_rational("-0.00005") == Rational(-1, 20000));
  CHECK(parse_decimal_rational("1/20000") == Rational(1, 20000));
  CHECK(parse_decimal_rational("+3") == 3);
  CHECK(parse_decimal_rational("0.0") == 0);
  CHECK(parse_decimal_rational("007.5") == Rational(15, 2));
  CHECK(parse_decimal_rational("-1/10") == Rational(-1, 10));
  CHECK_THROWS_AS(parse_decimal_rational("0.5e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_rational(""), std::invalid_argument);
  CHECK(rational_to_decimal(Rational(51, 100)) == "0.51");
  CHECK(rational_to_decimal(Rational(-1, 20000)) == "-0.00005");
  CHECK(rational_to_decimal(Rational(3)) == "3");
  // 0.325 + 0.025 k stays exact
  Rational t = parse_decimal_rational("0.325");
  for (int k = 0; k < 17; ++k) t += parse_decimal_rational("0.025");
  CHECK(rational_to_decimal(t) == "0.75");
}

TEST_CASE("digit agreement", "[report]") {
  ScopedPrecision sp(50);
  CHECK(digits_agree(Real("1.2345"), Real("1.2345"), 30) == 30);
  CHECK(digits_agree(Real("1.2346"), Real("1.2345"), 30) == 4);
  CHECK(digits_agree(Real("1.23459"), Real("1.2345"), 30) == 5);
  CHECK(digits_agree(Real("1.2344"), Real("1.2345"), 30) == 4);
  CHECK(digits_agree(Real("-4.44480783601992948796767219519"), Real("-4.4448078360199294879676721"), 40) == 26);
  CHECK(digits_agree(Real("0.001"), Real("0"), 30) == 0);
  CHECK(printed_significant_digits("-4.4448078360199294879676721") == 26);
  CHECK(printed_significant_digits("0.0000000146924137960847328") == 18);
  CHECK(format_real(Real("3.14159"), 3) == "3.14e+00");
}

TEST_CASE("records survive a JSON round trip", "[report]") {
  EvalRecord e;
  e.method = "borel";
  e.modulus = "3";
  e.theta_over_pi = "0.51";
  e.N = 10;
  e.digits = 30;
  e.value = {"-4.4e+00", "-6.8e-01"};
  e.SD = {"5.4e-09", "-3.7e-09"};
  e.est_error = "1e-40";
  e.warnings = {"w"};
  CHECK(round_trip(e) == e);
  e.oracle_diff = "2e-44";
  CHECK(round_trip(e) == e);

  TableRow t;
  t.delta = "1/100";
  t.method = "borel";
  t.value = {"1", "2"};
  t.digits_agree = 30;
  t.reference = {"1", "2"};
  CHECK(round_trip(t) == t);
  t.sd = ComplexText{"3", "4"};
  CHECK(round_trip(t) == t);
  CHECK(to_csv(t) == "1/100,borel,1,2,3,4,30,1,2");

  MultiplierRow m{"0.5", "0.5", std::nullopt, std::nullopt};
  CHECK(round_trip(m) == m);
  m.smoothed = ComplexText{"0.5", "0"};
  m.exact = ComplexText{"0.5", "1e-3"};
  CHECK(round_trip(m) == m);

  CrosscheckRow c;
  c.modulus = "3";
  c.theta_over_pi = "0.3";
  c.N = 10;
  c.entries = {{"borel", {"1", "2"}, 0.25, ""}, {"mb", {"", ""}, 1.5, "boom"}};
  c.max_delta = "1e-40";
  c.pass = true;
  CHECK(round_trip(c) == c);
}

TEST_CASE("configuration validation", "[cli]") {
  CHECK_NOTHROW(eval_config("3", "0.51").validate());
  CHECK_THROWS_AS(eval_config("3", "1.5").validate(), std::invalid_argument);
  CHECK_THROWS_AS(eval_config("3", "-1").validate(), std::invalid_argument);
  CHECK_THROWS_AS(eval_config("0", "0").validate(), std::invalid_argument);
  CliConfig c = eval_config("3", "0");
  c.digits = 5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = eval_config("3", "0");
  c.method = "euler";
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = eval_config("3", "0");
  c.N = "0";
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.N = "ten";
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("eval at z = 3 gives ln 2", "[cli]") {
  CliConfig cfg = eval_config("3", "0");
  cfg.format = OutputFormat::json;
  std::ostringstream os;
  CHECK(run_command(cfg, os) == kExitOk);
  auto j = nlohmann::json::parse(os.str());
  EvalRecord r = j.get<EvalRecord>();
  CHECK(r.N == 10);
  ScopedPrecision sp(50);
  CHECK(abs(parse_real(r.value.re) - log(Real(2))) < pow10(-29));
  CHECK(abs(parse_real(r.value.im)) < pow10(-29));
  CHECK(r.warnings.empty());
}

TEST_CASE("eval CSV carries the requested digits", "[cli]") {
  CliConfig cfg = eval_config("3", "0.6");
  cfg.format = OutputFormat::csv;
  cfg.digits = 25;
  cfg.N = "8";
  std::ostringstream os;
  CHECK(run_command(cfg, os) == kExitOk);
  std::istringstream in(os.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header.rfind("method,N,re,im", 0) == 0);
  std::vector<std::string> cols;
  std::stringstream ls(line);
  for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
  REQUIRE(cols.size() >= 4);
  CHECK(cols[0] == "borel");
  CHECK(cols[1] == "8");
  CHECK(printed_significant_digits(cols[2]) == 25);
  CHECK(printed_significant_digits(cols[3]) == 25);
}

TEST_CASE("eval with all methods reports a pairwise delta", "[cli]") {
  CliConfig cfg = eval_config("3", "0.3");
  cfg.method = "all";
  cfg.format = OutputFormat::json;
  std::ostringstream os;
  CHECK(run_command(cfg, os) == kExitOk);
  auto j = nlohmann::json::parse(os.str());
  CHECK(j["results"].size() == 3);
  ScopedPrecision sp(50);
  CHECK(parse_real(j["max_pairwise_delta"].get<std::string>()) < pow10(-25));
}

TEST_CASE("multiplier sweep", "[cli]") {
  CliConfig cfg;
  cfg.command = Command::multiplier;
  cfg.modulus = "8";
  cfg.from = "0.45";
  cfg.to = "0.55";
  cfg.step = "0.05";
  std::ostringstream os;
  CHECK(run_command(cfg, os) == kExitOk);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta_over_pi,S_conventional,S_smoothed_re,S_smoothed_im");
  std::vector<std::string> firsts;
  while (std::getline(in, line)) firsts.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
  CHECK(firsts == std::vector<std::string>{"0.45,0", "0.5,0.5", "0.55,1"});

  cfg.modulus = "0.5";
  std::vector<MultiplierRow> rows = multiplier_rows(cfg);
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].smoothed.has_value());
}

TEST_CASE("reruns are byte-identical", "[cli]") {
  CliConfig cfg = eval_config("0.7", "0.45");
  cfg.format = OutputFormat::csv;
  cfg.method = "borel";
  std::ostringstream a, b;
  CHECK(run_command(cfg, a) == kExitOk);
  CHECK(run_command(cfg, b) == kExitOk);
  CHECK(a.str() == b.str());
}

TEST_CASE("crosscheck on a small grid", "[cli]") {
  CliConfig cfg;
  cfg.command = Command::crosscheck;
  cfg.grid_moduli = {"3"};
  cfg.grid_thetas = {"0.2"};
  CrosscheckRow row = crosscheck_point(cfg, "3", "0.2");
  CHECK(row.pass);
  CHECK(row.entries.size() == 3);
  CHECK(row.N == 10);
}
