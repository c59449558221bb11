// slg: ln Gamma from the complete Stirling expansion.
//
//   slg eval --modulus 3 --theta-over-pi 0.51 --digits 30 --method borel
//   slg table --format csv
//   slg multiplier --modulus 8 --exact
//   slg crosscheck
#include "slg/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>

namespace {

void add_common(CLI::App* sub, slg::CliConfig& cfg) {
  static const std::map<std::string, slg::OutputFormat> formats{
      {"text", slg::OutputFormat::text}, {"csv", slg::OutputFormat::csv}, {"json", slg::OutputFormat::json}};
  sub->add_option("--digits", cfg.digits, "target decimal digits")->check(CLI::Range(10, 200));
  sub->add_option("--format", cfg.format, "text, csv or json")->transform(CLI::CheckedTransformer(formats));
  sub->add_option("--n-cap", cfg.n_cap, "cap on the number of directly summed n-terms");
}

}  // namespace

int main(int argc, char** argv) {
  slg::CliConfig cfg;
  if (const char* env = std::getenv("SLG_DIGITS")) {
    try {
      cfg.digits = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring SLG_DIGITS=" << env << "\n";
    }
  }

  CLI::App app{"ln Gamma(z) from the complete Stirling expansion"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate ln Gamma at one point");
  eval->add_option("--modulus", cfg.modulus, "|z|")->required();
  eval->add_option("--theta-over-pi", cfg.theta_over_pi, "arg z / pi as an exact decimal")->required();
  eval->add_option("-N,--terms", cfg.N, "truncation N, or auto");
  eval->add_option("--method", cfg.method, "borel, mb, paris or all");
  add_common(eval, cfg);

  auto* table = app.add_subcommand("table", "ln Gamma(3 e^{i(1/2 + delta) pi}) for the standard deltas");
  table->add_option("--modulus", cfg.modulus, "|z|");
  table->add_option("-N,--terms", cfg.N, "truncation N, or auto");
  table->add_option("--method", cfg.method, "borel, mb, paris or all");
  add_common(table, cfg);

  auto* mult = app.add_subcommand("multiplier", "conventional and smoothed Stokes multipliers");
  mult->add_option("--modulus", cfg.modulus, "|z|");
  mult->add_option("-N,--terms", cfg.N, "truncation N0, or auto");
  mult->add_option("--from", cfg.from, "first theta/pi");
  mult->add_option("--to", cfg.to, "last theta/pi");
  mult->add_option("--step", cfg.step, "theta/pi step");
  mult->add_flag("--exact", cfg.exact, "also print the exact multiplier R_N0 e^{-2 pi i z}");
  add_common(mult, cfg);

  auto* cross = app.add_subcommand("crosscheck", "compare the three remainder methods on a grid");
  cross->add_option("--moduli", cfg.grid_moduli, "grid of |z|");
  cross->add_option("--thetas", cfg.grid_thetas, "grid of theta/pi");
  cross->add_option("-N,--terms", cfg.N, "truncation N, or auto");
  add_common(cross, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? slg::kExitOk : slg::kExitUsage;
  }

  if (eval->parsed()) cfg.command = slg::Command::eval;
  else if (table->parsed()) cfg.command = slg::Command::table;
  else if (mult->parsed()) cfg.command = slg::Command::multiplier;
  else cfg.command = slg::Command::crosscheck;

  // The multiplier sweep is defined at |z| = 8 unless told otherwise.
  if (cfg.command == slg::Command::multiplier && mult->count("--modulus") == 0) cfg.modulus = "8";
  if (cfg.command != slg::Command::eval && cfg.theta_over_pi.empty()) cfg.theta_over_pi = "0";

  try {
    return slg::run_command(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return slg::kExitUsage;
  }
}
