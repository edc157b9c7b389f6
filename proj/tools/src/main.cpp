// Copyright 2026 The qtesd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qtesd/cli/commands.hpp"
#include "qtesd/cli/format.hpp"

namespace {

using namespace qtesd::cli;

void add_rate_flags(CLI::App* cmd, RateOptions& rates, std::optional<double>& k) {
  cmd->add_option("--gamma", rates.gamma, "qubit decay rate")->capture_default_str();
  cmd->add_option("--gamma1", rates.gamma1, "qutrit |1> -> |0> decay rate")->capture_default_str();
  cmd->add_option("--gamma2", rates.gamma2, "qutrit |2> -> |0> decay rate")->capture_default_str();
  cmd->add_option("--k", k, "interference parameter; sets gamma1 = k * gamma2");
}

// Writes to --out when given, otherwise stdout.
template <class Fn>
void with_output(const std::string& out_path, Fn&& fn) {
  if (out_path.empty() || out_path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError("cannot write '" + out_path + "'");
  fn(f);
  f.flush();
  if (!f) throw CliError("write failed for '" + out_path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics and sudden death for qubit-qutrit systems"};
  app.require_subcommand(1);

  std::string state;
  std::string out_path;
  RateOptions rates;
  std::optional<double> k;

  auto* neg = app.add_subcommand("negativity", "print the negativity of a state");
  neg->add_option("--state", state, "state specification")->required();

  EvolveRequest evolve;
  auto* ev = app.add_subcommand("evolve", "integrate the master equation and write a CSV trajectory");
  ev->add_option("--state", state, "state specification")->required();
  add_rate_flags(ev, rates, k);
  ev->add_option("--t-max", evolve.t_max, "final time")->capture_default_str();
  ev->add_option("--dt", evolve.dt, "maximum integrator step")->capture_default_str();
  ev->add_option("--stride", evolve.stride, "keep every n-th step")->capture_default_str();
  ev->add_option("--out", out_path, "output CSV (default stdout)");

  ScanRequest scan;
  std::string mode = "beta";
  std::string grid;
  auto* sc = app.add_subcommand("scan", "classify a parameter grid and locate the sudden-death boundary");
  sc->add_option("--mode", mode, "beta or mixed-c")->capture_default_str();
  add_rate_flags(sc, rates, k);
  sc->add_option("--b", scan.b, "mixed-family weight b")->capture_default_str();
  sc->add_option("--grid", grid, "start:stop:count");
  sc->add_option("--out", out_path, "output CSV (default stdout)");

  int figure_id = 0;
  std::string figure_dir = ".";
  auto* fig = app.add_subcommand("figure", "write figure data (CSV) and a gnuplot script");
  fig->add_option("id", figure_id, "figure number (1-4)")->required()->check(CLI::Range(1, 4));
  fig->add_option("--out", figure_dir, "output directory")->capture_default_str();

  ValidateOptions validate;
  auto* va = app.add_subcommand("validate", "run the analytic/numeric validation checks");
  va->add_option("--integrator-dt", validate.integrator_dt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  rates.k = k;
  try {
    if (*neg) {
      std::cout << format_number(cmd_negativity(state)) << '\n';
    } else if (*ev) {
      evolve.state = state;
      evolve.rates = rates;
      with_output(out_path, [&](std::ostream& os) { cmd_evolve(evolve, os); });
    } else if (*sc) {
      scan.mode = parse_scan_mode(mode);
      scan.rates = rates;
      if (!grid.empty()) scan.grid = grid;
      with_output(out_path, [&](std::ostream& os) {
        const auto result = cmd_scan(scan, os);
        if (!result.monotone)
          std::cerr << "warning: classification along the grid is not monotone; threshold is the "
                    << (scan.mode == ScanMode::Beta ? "smallest" : "largest") << " sudden-death point\n";
      });
    } else if (*fig) {
      for (const auto& p : cmd_figure(figure_id, figure_dir)) std::cout << p.string() << '\n';
    } else if (*va) {
      if (!(validate.integrator_dt > 0.0) || !std::isfinite(validate.integrator_dt))
        throw CliError("--integrator-dt must be positive");
      return cmd_validate(validate, std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "qtesd: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
