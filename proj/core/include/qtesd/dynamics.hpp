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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qtesd/matrix.hpp"
#include "qtesd/state.hpp"

namespace qtesd {

/// Spontaneous-emission rates: the qubit |1> -> |0> (gamma) and the
/// qutrit |1> -> |0> (gamma1) and |2> -> |0> (gamma2) channels.
/// Dimensionless; times are measured in the same units.
struct DecayRates {
  double gamma = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;

  /// Throws std::domain_error unless every rate is finite and >= 0.
  void validate() const;
  double max_rate() const;
  double min_rate() const;
  bool all_positive() const { return min_rate() > 0.0; }

  friend bool operator==(const DecayRates&, const DecayRates&) = default;
};

/// k = gamma1 / gamma2; 1 means no interference, 0 maximal interference.
/// Throws std::domain_error when gamma2 == 0.
double interference_k(const DecayRates& rates);

/// Rates with gamma1 = k * gamma2.
DecayRates rates_with_interference(double gamma, double gamma2, double k);

/// Weights of c|Psi-><Psi-| + b(|Psi+><Psi+| + |00><00| + |11><11|)
/// + a(|02><02| + |12><12|), with 2a + 3b + c = 1.
struct MixedFamilyParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// a = (1 - 3b - c) / 2. Throws std::domain_error if any weight is negative.
  static MixedFamilyParams from_bc(double b, double c);
  void validate() const;
};

enum class FamilyTag { Phi1, Phi2Plus, Phi2Minus, Phi2Prime, Phi3Plus, Phi3Minus, MixedAC, Custom };

const char* family_name(FamilyTag tag);

struct PureFamilyParams {
  double alpha = 0.0;
  double beta = 0.0;
};

/// An initial state drawn from one of the canonical families:
///   Phi1       alpha|0,0> + beta|1,1>
///   Phi2+/-    alpha|0,1> +/- beta|1,2>
///   Phi2Prime  alpha|0,2> + beta|1,1>
///   Phi3+/-    alpha|0,2> +/- beta|1,0>
///   MixedAC    the two-parameter mixed family
///   Custom     any density matrix
class StateFamily {
 public:
  /// alpha^2 + beta^2 must equal 1 within kNormTolerance.
  static StateFamily pure(FamilyTag tag, double alpha, double beta);
  static StateFamily mixed(const MixedFamilyParams& params);
  static StateFamily custom(const DensityMatrix& rho);

  FamilyTag tag() const { return tag_; }
  const PureFamilyParams& pure_params() const;
  const MixedFamilyParams& mixed_params() const;
  const DensityMatrix& custom_state() const;

  DensityMatrix initial_state() const;
  /// State vector for the pure families; throws std::logic_error otherwise.
  PureState pure_vector() const;

 private:
  StateFamily(FamilyTag tag, std::variant<PureFamilyParams, MixedFamilyParams, DensityMatrix> payload)
      : tag_(tag), payload_(std::move(payload)) {}

  FamilyTag tag_;
  std::variant<PureFamilyParams, MixedFamilyParams, DensityMatrix> payload_;
};

/// Right-hand side of the master equation: three independent Lindblad
/// decay channels with jump operators sigma_01 on the qubit and sigma_01,
/// sigma_02 on the qutrit.
Matrix6 dissipator(const Matrix6& rho, const DecayRates& rates);

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTimeStep = 1e-3;
/// Per-step trace drift beyond this rejects the step.
inline constexpr double kStepTraceDriftLimit = 1e-7;
/// Stored states must stay Hermitian and unit-trace within this.
inline constexpr double kStoredStateTolerance = 1e-9;

/// Advances rho by `duration` with classic RK4, using the smallest number
/// of equal steps no longer than max_dt.
Matrix6 rk4_advance(const Matrix6& rho, const DecayRates& rates, double duration, double max_dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> negativities;
};

/// Integrates from t = 0 to t_end with step <= dt, keeping every
/// stride-th step plus the final one.
Trajectory evolve_numeric(const DensityMatrix& initial, const DecayRates& rates, double t_end,
                          double dt = kDefaultTimeStep, std::size_t stride = 1);

// Closed-form solutions. alpha * beta carries the sign of the coherence.

DensityMatrix evolve_phi1_analytic(double alpha, double beta, const DecayRates& rates, double t);
DensityMatrix evolve_phi2_analytic(double alpha, double beta, const DecayRates& rates, double t);
DensityMatrix evolve_mixed_analytic(const MixedFamilyParams& params, const DecayRates& rates, double t);

/// Negativity of the evolved alpha|0,0> + beta|1,1> state (alpha = sqrt(1 - beta^2))
/// before the max{0, .} clamp, evaluated in a cancellation-free form. Its
/// sign decides entanglement.
double phi1_signed_negativity(double beta, const DecayRates& rates, double t);
double negativity_phi1_closed(double beta, const DecayRates& rates, double t);
double negativity_phi2_closed(double alpha, double beta, const DecayRates& rates, double t);

/// The t -> infinity state |0,0><0,0|.
DensityMatrix asymptotic_state();

}  // namespace qtesd
