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

// Random states and unitaries for property checks and validation runs.

#include <cmath>
#include <random>

#include "qtesd/matrix.hpp"
#include "qtesd/state.hpp"

namespace qtesd {

template <class Rng>
Complex random_gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Haar-distributed pure state.
template <class Rng>
PureState random_pure_state(Rng& rng) {
  PureState::Amplitudes a{};
  for (auto& z : a) z = random_gaussian_complex(rng);
  return PureState::normalized(a);
}

/// Haar unitary via Gram-Schmidt on a complex Ginibre matrix.
template <std::size_t N, class Rng>
CMatrix<N> random_unitary(Rng& rng) {
  CMatrix<N> g;
  for (auto& z : g.data()) z = random_gaussian_complex(rng);
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      Complex overlap{};
      for (std::size_t r = 0; r < N; ++r) overlap += std::conj(g(r, p)) * g(r, c);
      for (std::size_t r = 0; r < N; ++r) g(r, c) -= overlap * g(r, p);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < N; ++r) n += std::norm(g(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < N; ++r) g(r, c) /= n;
  }
  return g;
}

/// Mixed state G G^dagger / tr with G a 6 x rank Ginibre matrix.
template <class Rng>
DensityMatrix random_density_matrix(Rng& rng, std::size_t rank = 6) {
  Matrix6 g;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < rank && c < 6; ++c) g(r, c) = random_gaussian_complex(rng);
  Matrix6 m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  for (std::size_t r = 0; r < 6; ++r) {
    m(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < 6; ++c) m(c, r) = std::conj(m(r, c));
  }
  return DensityMatrix::assume_valid(m);
}

}  // namespace qtesd
