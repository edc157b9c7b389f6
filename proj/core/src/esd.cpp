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

#include "qtesd/esd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace qtesd {

namespace {

double coarse_time(double horizon, std::size_t k) {
  return horizon * static_cast<double>(k) / static_cast<double>(kCoarseSamples - 1);
}

// lo has indicator > tol, hi has indicator <= tol. Returns the refined hi.
double bisect_crossing(const NegativityFn& fn, double lo, double hi, double tol) {
  while (hi - lo > kDeathTimePrecision) {
    const double mid = 0.5 * (lo + hi);
    if (fn(mid) > tol)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

struct CoarseProfile {
  std::vector<double> times;
  std::vector<double> values;
};

CoarseProfile sample(const NegativityFn& fn, double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::domain_error("ESD scan: horizon must be positive");
  CoarseProfile p;
  p.times.reserve(kCoarseSamples);
  p.values.reserve(kCoarseSamples);
  for (std::size_t k = 0; k < kCoarseSamples; ++k) {
    const double t = coarse_time(horizon, k);
    p.times.push_back(t);
    p.values.push_back(fn(t));
  }
  return p;
}

std::optional<std::size_t> last_above(const CoarseProfile& p, double tol) {
  for (std::size_t k = p.values.size(); k-- > 0;)
    if (p.values[k] > tol) return k;
  return std::nullopt;
}

void fit_tail(const CoarseProfile& p, double horizon, EsdReport& report) {
  std::vector<double> ts, ls;
  for (std::size_t k = 0; k < p.times.size(); ++k) {
    if (p.times[k] < 0.9 * horizon) continue;
    if (!(p.values[k] > 0.0)) {
      report.exponential_tail = false;
      return;
    }
    ts.push_back(p.times[k]);
    ls.push_back(std::log(p.values[k]));
  }
  if (ts.size() < 3) return;
  const auto n = static_cast<double>(ts.size());
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    st += ts[k];
    sl += ls[k];
    stt += ts[k] * ts[k];
    stl += ts[k] * ls[k];
  }
  const double slope = (n * stl - st * sl) / (n * stt - st * st);
  const double icpt = (sl - slope * st) / n;
  double worst = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) worst = std::max(worst, std::abs(ls[k] - (icpt + slope * ts[k])));
  report.tail_slope = slope;
  report.tail_residual = worst;
  report.exponential_tail = worst <= kTailFitResidual;
}

// Integrates once over the coarse grid and serves states at arbitrary
// times by integrating from the nearest earlier grid point.
class NumericProbe {
 public:
  NumericProbe(const DensityMatrix& initial, const DecayRates& rates, double horizon, double dt)
      : rates_(rates), horizon_(horizon), dt_(dt) {
    states_.reserve(kCoarseSamples);
    states_.push_back(initial.matrix());
    for (std::size_t k = 1; k < kCoarseSamples; ++k)
      states_.push_back(
          rk4_advance(states_.back(), rates_, coarse_time(horizon_, k) - coarse_time(horizon_, k - 1), dt_));
  }

  Matrix6 state_at(double t) const {
    const double pos = t / horizon_ * static_cast<double>(kCoarseSamples - 1);
    auto k = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(kCoarseSamples - 1)));
    const double tk = coarse_time(horizon_, k);
    if (t == tk) return states_[k];
    return rk4_advance(states_[k], rates_, std::max(0.0, t - tk), dt_);
  }

 private:
  DecayRates rates_;
  double horizon_;
  double dt_;
  std::vector<Matrix6> states_;
};

bool kinds_follow(const std::vector<EsdReport>& reports, std::initializer_list<EsdKind> order) {
  std::vector<EsdKind> seq(order);
  std::size_t pos = 0;
  for (const auto& r : reports) {
    while (pos < seq.size() && seq[pos] != r.kind) ++pos;
    if (pos == seq.size()) return false;
  }
  return true;
}

void require_ascending(std::span<const double> grid, const char* who) {
  if (grid.empty()) throw std::domain_error(std::string(who) + ": grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw std::domain_error(std::string(who) + ": grid must be strictly ascending");
}

}  // namespace

const char* kind_name(EsdKind kind) {
  switch (kind) {
    case EsdKind::SuddenDeath: return "sudden_death";
    case EsdKind::Asymptotic: return "asymptotic";
    case EsdKind::InitiallySeparable: return "initially_separable";
    case EsdKind::DeathAndRevival: return "death_and_revival";
  }
  return "unknown";
}

std::optional<double> death_time(const NegativityFn& neg, double t_max, double tol) {
  const CoarseProfile p = sample(neg, t_max);
  const auto k = last_above(p, tol);
  if (!k || *k + 1 == p.times.size()) return std::nullopt;
  return bisect_crossing(neg, p.times[*k], p.times[*k + 1], tol);
}

EsdReport classify_profile(const NegativityFn& indicator, const NegativityFn& negativity_at, double horizon,
                           double tol) {
  const CoarseProfile p = sample(indicator, horizon);
  EsdReport report;
  report.residual_indicator = p.values.back();
  report.residual_negativity = negativity_at(horizon);

  if (!(p.values.front() > tol)) {
    report.kind = EsdKind::InitiallySeparable;
    return report;
  }
  const std::size_t last = *last_above(p, tol);
  std::optional<std::size_t> first_below;
  for (std::size_t k = 0; k < p.values.size(); ++k)
    if (!(p.values[k] > tol)) {
      first_below = k;
      break;
    }
  const bool revived = first_below && *first_below < last;

  if (last + 1 < p.times.size()) report.death_time = bisect_crossing(indicator, p.times[last], p.times[last + 1], tol);
  if (revived) {
    report.kind = EsdKind::DeathAndRevival;
    report.first_crossing = bisect_crossing(indicator, p.times[*first_below - 1], p.times[*first_below], tol);
  } else {
    report.kind = report.death_time ? EsdKind::SuddenDeath : EsdKind::Asymptotic;
  }
  if (report.kind == EsdKind::Asymptotic) fit_tail(p, horizon, report);
  return report;
}

double filtered_negativity(const Matrix6& rho, const DecayRates& rates, double t) {
  std::array<double, 6> log_gain{};
  for (std::size_t r = 0; r < 6; ++r) {
    const int i = qubit_level_of_row(r);
    const int j = qutrit_level_of_row(r);
    double rate = i == 1 ? rates.gamma : 0.0;
    if (j == 1) rate += rates.gamma1;
    if (j == 2) rate += rates.gamma2;
    log_gain[r] = 0.5 * rate * t;
  }
  Matrix6 m;
  double tr = 0.0;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) m(r, c) = rho(r, c) * std::exp(log_gain[r] + log_gain[c]);
  for (std::size_t r = 0; r < 6; ++r) tr += m(r, r).real();
  if (!(tr > 0.0) || !std::isfinite(tr)) return 0.0;
  m *= 1.0 / tr;
  return negativity(m);
}

EsdReport classify(const StateFamily& family, const DecayRates& rates, const ClassifyOptions& options) {
  rates.validate();
  const FamilyTag tag = family.tag();
  const double horizon = options.horizon;
  const bool phi2 = tag == FamilyTag::Phi2Plus || tag == FamilyTag::Phi2Minus;

  if (options.path == DetectionPath::Auto && (tag == FamilyTag::Phi1 || phi2)) {
    const auto [alpha, beta] = family.pure_params();
    NegativityFn closed;
    if (tag == FamilyTag::Phi1)
      closed = [&, b = std::abs(beta)](double t) { return negativity_phi1_closed(b, rates, t); };
    else
      closed = [&, a = alpha, b = beta](double t) { return negativity_phi2_closed(a, b, rates, t); };
    return classify_profile(closed, closed, horizon, 0.0);
  }

  std::function<Matrix6(double)> state_at;
  if (options.path == DetectionPath::Analytic && tag == FamilyTag::Phi1) {
    const auto p = family.pure_params();
    state_at = [&, p](double t) { return evolve_phi1_analytic(p.alpha, p.beta, rates, t).matrix(); };
  } else if (options.path == DetectionPath::Analytic && phi2) {
    const auto p = family.pure_params();
    const double beta = tag == FamilyTag::Phi2Minus ? -p.beta : p.beta;
    state_at = [&, p, beta](double t) { return evolve_phi2_analytic(p.alpha, beta, rates, t).matrix(); };
  } else if (options.path == DetectionPath::Analytic && tag == FamilyTag::MixedAC) {
    const auto p = family.mixed_params();
    state_at = [&, p](double t) { return evolve_mixed_analytic(p, rates, t).matrix(); };
  } else {
    const double dt = std::min(options.dt, kDefaultTimeStep / std::max(1.0, rates.max_rate()));
    auto probe = std::make_shared<NumericProbe>(family.initial_state(), rates, horizon, dt);
    state_at = [probe](double t) { return probe->state_at(t); };
  }
  const NegativityFn indicator = [&](double t) { return filtered_negativity(state_at(t), rates, t); };
  const NegativityFn plain = [&](double t) { return negativity(state_at(t)); };
  return classify_profile(indicator, plain, horizon, kSuddenDeathTolerance);
}

BoundaryScan scan_beta_boundary(const DecayRates& rates, std::span<const double> grid,
                                const ClassifyOptions& options) {
  rates.validate();
  require_ascending(grid, "scan_beta_boundary");
  for (double b : grid)
    if (!(b > 0.0 && b < 1.0)) throw std::domain_error("scan_beta_boundary: beta grid must lie in (0, 1)");

  auto run = [&](double beta) {
    return classify(StateFamily::pure(FamilyTag::Phi1, std::sqrt((1.0 - beta) * (1.0 + beta)), beta), rates, options);
  };
  auto dies = [&](double beta) { return run(beta).kind == EsdKind::SuddenDeath; };

  BoundaryScan scan;
  scan.fixed = {{"gamma", rates.gamma}, {"gamma1", rates.gamma1}, {"gamma2", rates.gamma2}};
  scan.swept = "beta";
  scan.grid.assign(grid.begin(), grid.end());
  for (double beta : grid) scan.reports.push_back(run(beta));
  scan.monotone =
      kinds_follow(scan.reports, {EsdKind::InitiallySeparable, EsdKind::Asymptotic, EsdKind::SuddenDeath});

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (scan.reports[i].kind != EsdKind::SuddenDeath) continue;
    if (i == 0) {
      scan.threshold = grid[0];
      break;
    }
    double lo = grid[i - 1], hi = grid[i];
    for (int it = 0; it < 8 || hi - lo > kBoundaryPrecision; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dies(mid) ? hi : lo) = mid;
    }
    scan.threshold = hi;
    break;
  }
  return scan;
}

BoundaryScan scan_c_boundary(double b, const DecayRates& rates, std::span<const double> grid,
                             const ClassifyOptions& options) {
  rates.validate();
  require_ascending(grid, "scan_c_boundary");
  for (double c : grid) (void)MixedFamilyParams::from_bc(b, c);

  auto run = [&](double c) { return classify(StateFamily::mixed(MixedFamilyParams::from_bc(b, c)), rates, options); };
  auto dies = [&](double c) { return run(c).kind == EsdKind::SuddenDeath; };

  BoundaryScan scan;
  scan.fixed = {{"b", b}, {"gamma", rates.gamma}, {"gamma1", rates.gamma1}, {"gamma2", rates.gamma2}};
  scan.swept = "c";
  scan.grid.assign(grid.begin(), grid.end());
  for (double c : grid) scan.reports.push_back(run(c));
  scan.monotone =
      kinds_follow(scan.reports, {EsdKind::InitiallySeparable, EsdKind::SuddenDeath, EsdKind::Asymptotic});

  for (std::size_t i = grid.size(); i-- > 0;) {
    if (scan.reports[i].kind != EsdKind::SuddenDeath) continue;
    if (i + 1 == grid.size()) {
      scan.threshold = grid[i];
      break;
    }
    double lo = grid[i], hi = grid[i + 1];
    for (int it = 0; it < 8 || hi - lo > kBoundaryPrecision; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dies(mid) ? lo : hi) = mid;
    }
    scan.threshold = lo;
    break;
  }
  return scan;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw std::domain_error("linspace: count must be >= 1");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = start;
    return v;
  }
  for (std::size_t k = 0; k < count; ++k)
    v[k] = k + 1 == count ? stop : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
  return v;
}

}  // namespace qtesd
