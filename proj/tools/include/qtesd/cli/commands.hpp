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

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtesd/dynamics.hpp"
#include "qtesd/esd.hpp"

namespace qtesd::cli {

/// Bad input or I/O failure; main prints the message and exits nonzero.
class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateOptions {
  double gamma = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  /// Overrides gamma1 with k * gamma2 when set.
  std::optional<double> k;

  DecayRates resolve() const;
};

/// `start:stop:count`, ascending.
std::vector<double> parse_grid(const std::string& text);

double cmd_negativity(const std::string& spec);

struct EvolveRequest {
  std::string state;
  RateOptions rates;
  double t_max = 5.0;
  double dt = kDefaultTimeStep;
  std::size_t stride = 10;
};

void cmd_evolve(const EvolveRequest& request, std::ostream& out);

/// Same CSV as cmd_evolve for an already-built family.
void write_trajectory_csv(const StateFamily& family, const DecayRates& rates, double t_max, double dt,
                          std::size_t stride, std::ostream& out);

enum class ScanMode { Beta, MixedC };

ScanMode parse_scan_mode(const std::string& text);

struct ScanRequest {
  ScanMode mode = ScanMode::Beta;
  RateOptions rates;
  double b = 0.02;
  std::optional<std::string> grid;
};

/// Writes `<swept>,kind,death_time` rows and a `threshold,<value|none>,`
/// footer. The returned scan lets callers report non-monotone grids.
BoundaryScan cmd_scan(const ScanRequest& request, std::ostream& out);

/// Writes fig<id>_<label>.csv files plus fig<id>.gp into `dir` and returns
/// the paths written, in order.
std::vector<std::filesystem::path> cmd_figure(int id, const std::filesystem::path& dir);

inline constexpr std::size_t kFigureGridSize = 256;
inline constexpr double kFigureAxisMax = 3.0;

struct ValidateOptions {
  double integrator_dt = kDefaultTimeStep;
};

/// One PASS/FAIL line per check; true when every check passes.
bool cmd_validate(const ValidateOptions& options, std::ostream& out);

}  // namespace qtesd::cli
