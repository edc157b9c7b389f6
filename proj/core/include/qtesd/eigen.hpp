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

// Cyclic Jacobi eigensolver for small dense Hermitian matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qtesd/matrix.hpp"

namespace qtesd {

/// Sweeps stop once the off-diagonal Frobenius norm drops below this value
/// (scaled by the matrix norm when that exceeds one).
inline constexpr double kJacobiOffDiagonalTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
/// Relative tolerance used to reject non-Hermitian input.
inline constexpr double kHermitianInputTolerance = 1e-10;

template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};  ///< ascending
  CMatrix<N> vectors;              ///< column k is the eigenvector of values[k]
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const CMatrix<N>& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary J = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
// acting on rows/columns p and q: a <- J^H a J, v <- v J.
template <std::size_t N>
void jacobi_rotate(CMatrix<N>& a, CMatrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * r);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex s_fwd = s * phase;             // J(p,q)
  const Complex s_bwd = s * std::conj(phase);  // -J(q,p)

  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s_bwd * akq;
    a(k, q) = s_fwd * akp + c * akq;
  }
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s_fwd * aqk;
    a(q, k) = s_bwd * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s_bwd * vkq;
    v(k, q) = s_fwd * vkp + c * vkq;
  }
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws std::domain_error on non-Hermitian input and
/// std::runtime_error if the sweep cap is hit.
template <std::size_t N>
HermitianEigen<N> hermitian_eigen(const CMatrix<N>& m) {
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) > kHermitianInputTolerance * scale)
    throw std::domain_error("hermitian_eigen: input matrix is not Hermitian");

  CMatrix<N> a = m;
  for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();
  CMatrix<N> v = CMatrix<N>::identity();

  const double threshold = kJacobiOffDiagonalTolerance * std::max(1.0, frobenius_norm(m));
  int sweep = 0;
  while (detail::off_diagonal_norm(a) >= threshold) {
    if (++sweep > kJacobiMaxSweeps)
      throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMatrix<N>& m) {
  return hermitian_eigen(m).values;
}

}  // namespace qtesd
