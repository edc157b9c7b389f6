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

#include <cmath>
#include <random>

#include "qtesd/dynamics.hpp"
#include "qtesd/random.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline qtesd::DecayRates rates(Rng& rng, double lo = 0.1, double hi = 2.0) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

// (alpha, beta) on the unit circle with both strictly positive.
inline std::pair<double, double> amplitudes(Rng& rng, double beta_lo = 0.05, double beta_hi = 0.995) {
  const double beta = uniform(rng, beta_lo, beta_hi);
  return {std::sqrt((1.0 - beta) * (1.0 + beta)), beta};
}

inline qtesd::MixedFamilyParams mixed(Rng& rng) {
  const double b = uniform(rng, 0.0, 0.3);
  const double c = uniform(rng, 0.0, 1.0 - 3.0 * b);
  return qtesd::MixedFamilyParams::from_bc(b, c);
}

}  // namespace testgen
