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

#include "qtesd/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace qtesd {

namespace {

void require_unit_pair(double alpha, double beta, const char* who) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) ||
      std::abs(alpha * alpha + beta * beta - 1.0) > kNormTolerance)
    throw std::domain_error(std::string(who) + ": alpha^2 + beta^2 must equal 1");
}

void require_time(double t, const char* who) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(who) + ": t must be finite and >= 0");
}

// Closes the trace on the ground-ground population and symmetrizes.
DensityMatrix finish_analytic(Matrix6 m) {
  double others = 0.0;
  for (std::size_t i = 0; i < 5; ++i) others += m(i, i).real();
  m(5, 5) = 1.0 - others;
  return DensityMatrix::assume_valid(m);
}

struct Channel {
  double rate;
  std::array<int, 6> lowered;  // row reached by the jump, -1 if not excited
};

std::array<Channel, 3> channels(const DecayRates& rates) {
  Channel qubit{rates.gamma, {}};
  Channel qutrit1{rates.gamma1, {}};
  Channel qutrit2{rates.gamma2, {}};
  for (std::size_t r = 0; r < 6; ++r) {
    const int i = qubit_level_of_row(r);
    const int j = qutrit_level_of_row(r);
    qubit.lowered[r] = i == 1 ? static_cast<int>(basis_index(0, j).row()) : -1;
    qutrit1.lowered[r] = j == 1 ? static_cast<int>(basis_index(i, 0).row()) : -1;
    qutrit2.lowered[r] = j == 2 ? static_cast<int>(basis_index(i, 0).row()) : -1;
  }
  return {qubit, qutrit1, qutrit2};
}

}  // namespace

void DecayRates::validate() const {
  for (double r : {gamma, gamma1, gamma2})
    if (!std::isfinite(r) || r < 0.0) throw std::domain_error("DecayRates: rates must be finite and >= 0");
}

double DecayRates::max_rate() const { return std::max({gamma, gamma1, gamma2}); }
double DecayRates::min_rate() const { return std::min({gamma, gamma1, gamma2}); }

double interference_k(const DecayRates& rates) {
  rates.validate();
  if (rates.gamma2 == 0.0) throw std::domain_error("interference_k: gamma2 must be positive");
  return rates.gamma1 / rates.gamma2;
}

DecayRates rates_with_interference(double gamma, double gamma2, double k) {
  if (!std::isfinite(k) || k < 0.0) throw std::domain_error("interference parameter k must be >= 0");
  DecayRates r{gamma, k * gamma2, gamma2};
  r.validate();
  return r;
}

MixedFamilyParams MixedFamilyParams::from_bc(double b, double c) {
  double a = 0.5 * (1.0 - 3.0 * b - c);
  if (a < 0.0 && a > -1e-15) a = 0.0;
  MixedFamilyParams p{a, b, c};
  if (a < 0.0)
    throw std::domain_error("mixed family: c = " + std::to_string(c) + " gives a = " + std::to_string(a) +
                            " < 0 for b = " + std::to_string(b));
  p.validate();
  return p;
}

void MixedFamilyParams::validate() const {
  for (double w : {a, b, c})
    if (!std::isfinite(w) || w < 0.0) throw std::domain_error("mixed family: weights must be finite and >= 0");
  if (std::abs(2.0 * a + 3.0 * b + c - 1.0) > kNormTolerance)
    throw std::domain_error("mixed family: 2a + 3b + c must equal 1");
}

const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Phi1: return "phi1";
    case FamilyTag::Phi2Plus: return "phi2plus";
    case FamilyTag::Phi2Minus: return "phi2minus";
    case FamilyTag::Phi2Prime: return "phi2prime";
    case FamilyTag::Phi3Plus: return "phi3plus";
    case FamilyTag::Phi3Minus: return "phi3minus";
    case FamilyTag::MixedAC: return "mixed";
    case FamilyTag::Custom: return "custom";
  }
  return "unknown";
}

StateFamily StateFamily::pure(FamilyTag tag, double alpha, double beta) {
  if (tag == FamilyTag::MixedAC || tag == FamilyTag::Custom)
    throw std::domain_error("StateFamily::pure: tag is not a pure family");
  require_unit_pair(alpha, beta, "StateFamily::pure");
  return StateFamily(tag, PureFamilyParams{alpha, beta});
}

StateFamily StateFamily::mixed(const MixedFamilyParams& params) {
  params.validate();
  return StateFamily(FamilyTag::MixedAC, params);
}

StateFamily StateFamily::custom(const DensityMatrix& rho) { return StateFamily(FamilyTag::Custom, rho); }

const PureFamilyParams& StateFamily::pure_params() const {
  if (const auto* p = std::get_if<PureFamilyParams>(&payload_)) return *p;
  throw std::logic_error("StateFamily: not a pure family");
}

const MixedFamilyParams& StateFamily::mixed_params() const {
  if (const auto* p = std::get_if<MixedFamilyParams>(&payload_)) return *p;
  throw std::logic_error("StateFamily: not the mixed family");
}

const DensityMatrix& StateFamily::custom_state() const {
  if (const auto* p = std::get_if<DensityMatrix>(&payload_)) return *p;
  throw std::logic_error("StateFamily: not a custom state");
}

DensityMatrix StateFamily::initial_state() const {
  if (tag_ == FamilyTag::Custom) return custom_state();
  if (tag_ == FamilyTag::MixedAC) {
    const auto& p = mixed_params();
    const double h = 1.0 / std::sqrt(2.0);
    std::array<Complex, 6> psi_plus{}, psi_minus{};
    psi_plus[basis_index(0, 1).row()] = h;
    psi_plus[basis_index(1, 0).row()] = h;
    psi_minus[basis_index(0, 1).row()] = h;
    psi_minus[basis_index(1, 0).row()] = -h;
    Matrix6 m;
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 6; ++c)
        m(r, c) = p.c * psi_minus[r] * std::conj(psi_minus[c]) + p.b * psi_plus[r] * std::conj(psi_plus[c]);
    m(basis_index(0, 0).row(), basis_index(0, 0).row()) += p.b;
    m(basis_index(1, 1).row(), basis_index(1, 1).row()) += p.b;
    m(basis_index(0, 2).row(), basis_index(0, 2).row()) += p.a;
    m(basis_index(1, 2).row(), basis_index(1, 2).row()) += p.a;
    return DensityMatrix::assume_valid(m);
  }

  return pure_to_density(pure_vector());
}

PureState StateFamily::pure_vector() const {
  const auto& p = pure_params();
  PureState::Amplitudes a{};
  auto put = [&a](int i, int j, double v) { a[static_cast<std::size_t>(3 * i + j)] = v; };
  switch (tag_) {
    case FamilyTag::Phi1: put(0, 0, p.alpha); put(1, 1, p.beta); break;
    case FamilyTag::Phi2Plus: put(0, 1, p.alpha); put(1, 2, p.beta); break;
    case FamilyTag::Phi2Minus: put(0, 1, p.alpha); put(1, 2, -p.beta); break;
    case FamilyTag::Phi2Prime: put(0, 2, p.alpha); put(1, 1, p.beta); break;
    case FamilyTag::Phi3Plus: put(0, 2, p.alpha); put(1, 0, p.beta); break;
    case FamilyTag::Phi3Minus: put(0, 2, p.alpha); put(1, 0, -p.beta); break;
    default: break;
  }
  return PureState::normalized(a);
}

Matrix6 dissipator(const Matrix6& rho, const DecayRates& rates) {
  Matrix6 out;
  for (const auto& ch : channels(rates)) {
    if (ch.rate == 0.0) continue;
    for (std::size_t r = 0; r < 6; ++r) {
      const bool er = ch.lowered[r] >= 0;
      for (std::size_t s = 0; s < 6; ++s) {
        const bool es = ch.lowered[s] >= 0;
        const double damping = 0.5 * ch.rate * (static_cast<double>(er) + static_cast<double>(es));
        if (damping != 0.0) out(r, s) -= damping * rho(r, s);
        if (er && es)
          out(static_cast<std::size_t>(ch.lowered[r]), static_cast<std::size_t>(ch.lowered[s])) += ch.rate * rho(r, s);
      }
    }
  }
  return out;
}

Matrix6 rk4_advance(const Matrix6& rho, const DecayRates& rates, double duration, double max_dt) {
  if (!(max_dt > 0.0)) throw std::domain_error("rk4_advance: dt must be positive");
  require_time(duration, "rk4_advance");
  if (duration == 0.0) return rho;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / max_dt - 1e-9)));
  const double h = duration / static_cast<double>(steps);

  const double trace0 = rho.trace().real();
  Matrix6 y = rho;
  for (std::size_t n = 0; n < steps; ++n) {
    const Matrix6 k1 = dissipator(y, rates);
    const Matrix6 k2 = dissipator(y + (0.5 * h) * k1, rates);
    const Matrix6 k3 = dissipator(y + (0.5 * h) * k2, rates);
    const Matrix6 k4 = dissipator(y + h * k3, rates);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (std::abs(y.trace().real() - trace0) > kStepTraceDriftLimit)
      throw IntegrationError("rk4: trace drift exceeds limit; reduce dt");
  }
  return y;
}

Trajectory evolve_numeric(const DensityMatrix& initial, const DecayRates& rates, double t_end, double dt,
                          std::size_t stride) {
  rates.validate();
  require_time(t_end, "evolve_numeric");
  if (!(dt > 0.0)) throw std::domain_error("evolve_numeric: dt must be positive");
  if (stride == 0) throw std::domain_error("evolve_numeric: stride must be >= 1");

  Trajectory traj;
  auto store = [&](double t, const Matrix6& m) {
    if (hermiticity_defect(m) > kStoredStateTolerance || std::abs(m.trace().real() - 1.0) > kStoredStateTolerance)
      throw IntegrationError("evolve_numeric: state left the density-matrix manifold");
    traj.times.push_back(t);
    traj.states.push_back(DensityMatrix::assume_valid(m));
    traj.negativities.push_back(negativity(m));
  };

  store(0.0, initial.matrix());
  if (t_end == 0.0) return traj;

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
  const double h = t_end / static_cast<double>(steps);
  Matrix6 y = initial.matrix();
  for (std::size_t n = 1; n <= steps; ++n) {
    y = rk4_advance(y, rates, h, h);
    if (n % stride == 0 || n == steps) store(n == steps ? t_end : static_cast<double>(n) * h, y);
  }
  return traj;
}

DensityMatrix evolve_phi1_analytic(double alpha, double beta, const DecayRates& rates, double t) {
  require_unit_pair(alpha, beta, "evolve_phi1_analytic");
  require_time(t, "evolve_phi1_analytic");
  rates.validate();
  const double x = std::exp(-rates.gamma * t);
  const double y = std::exp(-rates.gamma1 * t);
  const double b2 = beta * beta;
  Matrix6 m;
  m(1, 1) = b2 * x * y;
  m(1, 5) = m(5, 1) = alpha * beta * std::exp(-0.5 * (rates.gamma + rates.gamma1) * t);
  m(2, 2) = b2 * x * -std::expm1(-rates.gamma1 * t);
  m(4, 4) = b2 * y * -std::expm1(-rates.gamma * t);
  return finish_analytic(m);
}

DensityMatrix evolve_phi2_analytic(double alpha, double beta, const DecayRates& rates, double t) {
  require_unit_pair(alpha, beta, "evolve_phi2_analytic");
  require_time(t, "evolve_phi2_analytic");
  rates.validate();
  const double x = std::exp(-rates.gamma * t);
  const double y1 = std::exp(-rates.gamma1 * t);
  const double y2 = std::exp(-rates.gamma2 * t);
  const double b2 = beta * beta;
  Matrix6 m;
  m(0, 0) = b2 * x * y2;
  m(0, 4) = m(4, 0) = alpha * beta * std::exp(-0.5 * (rates.gamma + rates.gamma1 + rates.gamma2) * t);
  m(2, 2) = b2 * x * -std::expm1(-rates.gamma2 * t);
  m(3, 3) = b2 * y2 * -std::expm1(-rates.gamma * t);
  m(4, 4) = alpha * alpha * y1;
  return finish_analytic(m);
}

DensityMatrix evolve_mixed_analytic(const MixedFamilyParams& params, const DecayRates& rates, double t) {
  params.validate();
  require_time(t, "evolve_mixed_analytic");
  rates.validate();
  const auto [a, b, c] = params;
  const double x = std::exp(-rates.gamma * t);
  const double y1 = std::exp(-rates.gamma1 * t);
  const double y2 = std::exp(-rates.gamma2 * t);
  Matrix6 m;
  m(0, 0) = a * x * y2;
  m(1, 1) = b * x * y1;
  m(2, 2) = 0.5 * x * (1.0 - 2.0 * (b * y1 + a * y2));
  m(2, 4) = m(4, 2) = 0.5 * (b - c) * std::exp(-0.5 * (rates.gamma + rates.gamma1) * t);
  m(3, 3) = a * y2 * (2.0 - x);
  m(4, 4) = 0.5 * (3.0 * b + c) * y1 - b * x * y1;
  return finish_analytic(m);
}

double phi1_signed_negativity(double beta, const DecayRates& rates, double t) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::domain_error("phi1 negativity: beta must lie in [0, 1]");
  require_time(t, "phi1 negativity");
  rates.validate();
  if (beta == 0.0) return 0.0;
  const double b2 = beta * beta;
  const double a2 = (1.0 - beta) * (1.0 + beta);
  const double x = std::exp(-rates.gamma * t);
  const double y = std::exp(-rates.gamma1 * t);
  const double ex = -std::expm1(-rates.gamma * t);
  const double ey = -std::expm1(-rates.gamma1 * t);
  // N = sqrt(A) - B with A - B^2 = 4 b2 x y (a2 - b2 ex ey).
  const double a_term = b2 * b2 * (x - y) * (x - y) + 4.0 * a2 * b2 * x * y;
  const double b_term = b2 * (x * ey + y * ex);
  const double den = std::sqrt(a_term) + b_term;
  if (den == 0.0) return 0.0;
  return 4.0 * b2 * x * y * (a2 - b2 * ex * ey) / den;
}

double negativity_phi1_closed(double beta, const DecayRates& rates, double t) {
  return std::max(0.0, phi1_signed_negativity(beta, rates, t));
}

double negativity_phi2_closed(double alpha, double beta, const DecayRates& rates, double t) {
  require_unit_pair(alpha, beta, "phi2 negativity");
  require_time(t, "phi2 negativity");
  rates.validate();
  // N = sqrt(u^2 + v) - u, rewritten as v / (sqrt(u^2 + v) + u).
  const double u = beta * beta * std::exp(-rates.gamma2 * t) * -std::expm1(-rates.gamma * t);
  const double v = 4.0 * alpha * alpha * beta * beta *
                   std::exp(-(rates.gamma + rates.gamma1 + rates.gamma2) * t);
  if (v == 0.0) return 0.0;
  return v / (std::sqrt(u * u + v) + u);
}

DensityMatrix asymptotic_state() { return pure_to_density(PureState::product(0, 0)); }

}  // namespace qtesd
