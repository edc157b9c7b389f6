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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtesd/dynamics.hpp"

namespace qtesd {

/// Negativity (or entanglement indicator) below or at this value counts as
/// zero on numerically evolved trajectories.
inline constexpr double kSuddenDeathTolerance = 1e-9;
inline constexpr double kDefaultHorizon = 50.0;
inline constexpr std::size_t kCoarseSamples = 512;
inline constexpr double kDeathTimePrecision = 1e-8;
inline constexpr double kBoundaryPrecision = 1e-4;
/// Maximum log-residual for the tail of an asymptotic trajectory to count
/// as exponential.
inline constexpr double kTailFitResidual = 0.1;

enum class EsdKind { SuddenDeath, Asymptotic, InitiallySeparable, DeathAndRevival };

const char* kind_name(EsdKind kind);

struct EsdReport {
  EsdKind kind = EsdKind::Asymptotic;
  /// Earliest time after which the indicator stays <= tolerance up to the
  /// horizon (SuddenDeath, and DeathAndRevival when it ends dead).
  std::optional<double> death_time;
  /// First crossing below tolerance, only set when a revival was seen.
  std::optional<double> first_crossing;
  /// Negativity of the state at the horizon.
  double residual_negativity = 0.0;
  /// Detection indicator at the horizon.
  double residual_indicator = 0.0;
  /// Least-squares slope of log(indicator) over the final tenth of the horizon.
  double tail_slope = 0.0;
  /// Max |log(indicator) - fit| over that window.
  double tail_residual = 0.0;
  bool exponential_tail = false;
};

using NegativityFn = std::function<double(double)>;

/// Earliest time after which `neg` stays <= tol through t_max: the last
/// coarse sample above tol (512 points on [0, t_max]) is bracketed against
/// its successor and bisected to kDeathTimePrecision. Empty when neg is
/// above tol at t_max or never above tol.
std::optional<double> death_time(const NegativityFn& neg, double t_max, double tol = kSuddenDeathTolerance);

/// Classifies an indicator trajectory sampled on the coarse grid.
/// `negativity_at` supplies the plain negativity for the report.
EsdReport classify_profile(const NegativityFn& indicator, const NegativityFn& negativity_at, double horizon,
                           double tol);

/// Negativity of the state after the local filter that undoes free decay of
/// every excited level: diag(e^{gamma t/2}, 1) on the qubit and
/// diag(1, e^{gamma1 t/2}, e^{gamma2 t/2}) on the qutrit, renormalized.
/// Invertible local filters preserve PPT, so this is zero exactly when the
/// negativity is, but it does not shrink with the excited populations.
double filtered_negativity(const Matrix6& rho, const DecayRates& rates, double t);

enum class DetectionPath {
  Auto,     ///< closed forms where available, otherwise numeric integration
  Numeric,  ///< always integrate and use the filtered eigensolver negativity
  Analytic  ///< analytic state matrices with the filtered eigensolver negativity
};

struct ClassifyOptions {
  double horizon = kDefaultHorizon;
  DetectionPath path = DetectionPath::Auto;
  double dt = kDefaultTimeStep;
};

/// Closed-form paths (Phi1 and Phi2+/- families) detect death on the exact
/// max{0, .} clamp (tolerance 0); other paths use kSuddenDeathTolerance on
/// filtered_negativity.
EsdReport classify(const StateFamily& family, const DecayRates& rates, const ClassifyOptions& options = {});

struct BoundaryScan {
  std::vector<std::pair<std::string, double>> fixed;
  std::string swept;
  std::vector<double> grid;
  std::vector<EsdReport> reports;
  std::optional<double> threshold;
  /// False when the kinds along the grid cross the boundary more than once.
  bool monotone = true;
};

/// Sweeps beta for the Phi1 family; the threshold is the smallest beta with
/// sudden death, bisection-refined to kBoundaryPrecision.
BoundaryScan scan_beta_boundary(const DecayRates& rates, std::span<const double> grid,
                                const ClassifyOptions& options = {});

/// Sweeps c for the mixed family at fixed b; the threshold is the largest c
/// with sudden death. Throws std::domain_error naming the first c with a < 0.
BoundaryScan scan_c_boundary(double b, const DecayRates& rates, std::span<const double> grid,
                             const ClassifyOptions& options = {.horizon = kDefaultHorizon,
                                                                .path = DetectionPath::Analytic,
                                                                .dt = kDefaultTimeStep});

/// Evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

}  // namespace qtesd
