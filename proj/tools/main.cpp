// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "torusflux/cli/run.hpp"
#include "torusflux/cli/scenario.hpp"
#include "torusflux/common.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSuite = 4;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw torusflux::ParseError("cannot open scenario file: " + path, 0, 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Reports go to --out or stdout; everything else goes to stderr.
int write_report(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << out << "\n";
    return kExitNumerical;
  }
  f << text;
  return 0;
}

bool all_agreements_pass(const torusflux::cli::Report& rep) {
  for (const auto& t : rep.tasks)
    for (const auto& a : t.agreements)
      if (!a.pass) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "torusflux: flux of symplectomorphism families over flat torus models"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format = "json";
  std::string out_path;
  torusflux::cli::RunOptions opts;

  CLI::App* run =
      app.add_subcommand("run", "execute the tasks of a scenario file");
  run->add_option("--scenario", scenario_path, "scenario file to execute")
      ->required();
  run->add_option("--format", format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  run->add_option("--steps", opts.steps,
                  "override time quadrature steps (positive multiple of 4)");
  run->add_option("--grid", opts.grid, "override spatial resolution");
  run->add_option("--tolerance", opts.tolerance,
                  "override agreement tolerances");
  run->add_option("--out", out_path, "write the report here (default stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the cross-module invariant suite");
  verify->add_option("--scenario", scenario_path,
                     "optional scenario whose structure joins the sweep");
  verify->add_option("--format", format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", out_path,
                     "write the report here (default stdout)");

  app.add_subcommand("explain",
                     "describe the conventions and formulas implemented");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (run->parsed()) {
      const torusflux::cli::Scenario sc =
          torusflux::cli::parse_scenario(slurp(scenario_path));
      if (opts.steps != 0 && (opts.steps < 4 || opts.steps % 4 != 0)) {
        std::cerr << "--steps must be a positive multiple of 4\n";
        return kExitParse;
      }
      const torusflux::cli::Report rep = torusflux::cli::run_scenario(sc, opts);
      const int rc =
          write_report(torusflux::cli::emit_report(rep, format), out_path);
      if (rc != 0) return rc;
      if (rep.suite && rep.suite->failed > 0) return kExitSuite;
      return all_agreements_pass(rep) ? 0 : kExitNumerical;
    }
    if (verify->parsed()) {
      std::optional<torusflux::cli::Scenario> sc;
      if (!scenario_path.empty())
        sc = torusflux::cli::parse_scenario(slurp(scenario_path));
      const torusflux::cli::Report rep =
          torusflux::cli::verify_report(sc ? &*sc : nullptr);
      const int rc =
          write_report(torusflux::cli::emit_report(rep, format), out_path);
      if (rc != 0) return rc;
      return rep.suite->failed == 0 ? 0 : kExitSuite;
    }
    std::cout << torusflux::cli::explain_text();
    return 0;
  } catch (const torusflux::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
