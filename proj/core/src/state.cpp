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

#include "qtesd/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qtesd/eigen.hpp"

namespace qtesd {

namespace {

std::size_t flat_index(int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 2) throw std::domain_error("PureState: level out of range");
  return static_cast<std::size_t>(3 * i + j);
}

double norm_squared(const PureState::Amplitudes& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

void require_finite(const PureState::Amplitudes& a) {
  for (const auto& z : a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("PureState: non-finite amplitude");
}

// Phase that makes the first non-negligible component real and nonnegative.
template <std::size_t N>
Complex leading_phase(const std::array<Complex, N>& v) {
  for (const auto& z : v)
    if (std::abs(z) > 1e-14) return std::conj(z) / std::abs(z);
  return 1.0;
}

template <std::size_t N>
double vec_norm(const std::array<Complex, N>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// Eigenvectors of a 2x2 Hermitian matrix [[p, q], [conj q, r]]; returns
// {smaller, larger} eigenvalue vectors, phase-normalized.
std::array<std::array<Complex, 2>, 2> qubit_schmidt_basis(const Matrix2& rho_a) {
  const double p = rho_a(0, 0).real();
  const double r = rho_a(1, 1).real();
  const Complex q = rho_a(0, 1);
  const double half_gap = std::sqrt(0.25 * (p - r) * (p - r) + std::norm(q));
  std::array<Complex, 2> e0{1.0, 0.0};
  std::array<Complex, 2> e1{0.0, 1.0};
  if (half_gap < 1e-13) return {e0, e1};  // degenerate: computational basis
  if (std::abs(q) < 1e-15 * std::max(1.0, half_gap)) {
    if (p <= r) return {e0, e1};
    return {e1, e0};
  }
  const double lam_small = 0.5 * (p + r) - half_gap;
  // (H - lam) v = 0: use whichever row is better conditioned.
  std::array<Complex, 2> v;
  if (std::abs(p - lam_small) >= std::abs(r - lam_small))
    v = {-q, Complex(p - lam_small)};
  else
    v = {Complex(r - lam_small), -std::conj(q)};
  const double nv = vec_norm(v);
  for (auto& z : v) z /= nv;
  const Complex ph = leading_phase(v);
  for (auto& z : v) z *= ph;
  // Orthogonal complement.
  std::array<Complex, 2> w{-std::conj(v[1]), std::conj(v[0])};
  const Complex pw = leading_phase(w);
  for (auto& z : w) z *= pw;
  return {v, w};
}

}  // namespace

PureState::PureState(const Amplitudes& amps) : amps_(amps) {
  require_finite(amps_);
  if (std::abs(norm_squared(amps_) - 1.0) > kNormTolerance)
    throw std::domain_error("PureState: amplitudes are not normalized");
}

PureState PureState::normalized(Amplitudes amps) {
  require_finite(amps);
  const double n = std::sqrt(norm_squared(amps));
  if (n == 0.0) throw std::domain_error("PureState: zero vector cannot be normalized");
  for (auto& z : amps) z /= n;
  return PureState(amps);
}

PureState PureState::product(int qubit_level, int qutrit_level) {
  Amplitudes a{};
  a[flat_index(qubit_level, qutrit_level)] = 1.0;
  return PureState(a);
}

Complex PureState::amplitude(int qubit_level, int qutrit_level) const {
  return amps_[flat_index(qubit_level, qutrit_level)];
}

Complex PureState::flat(int x) const {
  if (x < 1 || x > 6) throw std::domain_error("PureState::flat: index must be 1..6");
  return amps_[static_cast<std::size_t>(x - 1)];
}

std::array<Complex, 6> PureState::as_column() const {
  std::array<Complex, 6> col{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) col[basis_index(i, j).row()] = amplitude(i, j);
  return col;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix6& m) {
  for (const auto& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("DensityMatrix: non-finite entry");
  if (hermiticity_defect(m) > kHermitianTolerance)
    throw std::domain_error("DensityMatrix: matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kTraceTolerance)
    throw std::domain_error("DensityMatrix: trace is not 1");
  if (hermitian_eigenvalues(m).front() < -kPositivityTolerance)
    throw std::domain_error("DensityMatrix: matrix is not positive semidefinite");
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
  Matrix6 m;
  for (std::size_t i = 0; i < 6; ++i) m(i, i) = 1.0 / 6.0;
  return DensityMatrix(m);
}

DensityMatrix pure_to_density(const PureState& psi) {
  const auto col = psi.as_column();
  Matrix6 m;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) m(r, c) = col[r] * std::conj(col[c]);
  return DensityMatrix::assume_valid(m);
}

Matrix6 partial_transpose(const Matrix6& m, Subsystem subsystem) {
  // Row r = 3*a + b with a the qubit block index and b the qutrit index.
  Matrix6 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 3; ++b2) {
          const std::size_t r = 3 * a + b;
          const std::size_t c = 3 * a2 + b2;
          if (subsystem == Subsystem::Qutrit)
            out(r, c) = m(3 * a + b2, 3 * a2 + b);
          else
            out(r, c) = m(3 * a2 + b, 3 * a + b2);
        }
  return out;
}

Matrix6 partial_transpose(const DensityMatrix& rho, Subsystem subsystem) {
  return partial_transpose(rho.matrix(), subsystem);
}

double negativity(const Matrix6& rho, Subsystem subsystem) {
  double sum = 0.0;
  for (double lam : hermitian_eigenvalues(partial_transpose(rho, subsystem)))
    if (lam <= -kNegativityTolerance) sum -= lam;
  return 2.0 * sum;
}

double negativity(const DensityMatrix& rho, Subsystem subsystem) {
  return negativity(rho.matrix(), subsystem);
}

int negative_pt_eigenvalue_count(const DensityMatrix& rho) {
  int n = 0;
  for (double lam : hermitian_eigenvalues(partial_transpose(rho)))
    if (lam <= -kNegativityTolerance) ++n;
  return n;
}

double f_invariant(const PureState& psi) {
  const Complex a1 = psi.flat(1), a2 = psi.flat(2), a3 = psi.flat(3);
  const Complex a4 = psi.flat(4), a5 = psi.flat(5), a6 = psi.flat(6);
  const double n1 = std::norm(a1), n2 = std::norm(a2), n3 = std::norm(a3);
  const double n4 = std::norm(a4), n5 = std::norm(a5), n6 = std::norm(a6);
  const double f = n2 * n4 + n3 * n4 - 2.0 * (a1 * std::conj(a2) * std::conj(a4) * a5).real() -
                   2.0 * (a1 * std::conj(a3) * std::conj(a4) * a6).real() + n1 * n5 + n3 * n5 +
                   n1 * n6 + n2 * n6 - 2.0 * (a2 * std::conj(a3) * std::conj(a5) * a6).real();
  // A sum of squared minors; negative values are rounding residue.
  return std::clamp(f, 0.0, 0.25);
}

std::array<double, 6> pt_spectrum_pure(const PureState& psi) {
  const double f = f_invariant(psi);
  const double sf = std::sqrt(f);
  const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * f));
  std::array<double, 6> s{0.0, 0.0, -sf, sf, 0.5 * (1.0 - disc), 0.5 * (1.0 + disc)};
  std::sort(s.begin(), s.end());
  return s;
}

Matrix2 reduced_qubit_state(const PureState& psi) {
  Matrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      Complex s{};
      for (int j = 0; j < 3; ++j) s += psi.amplitude(i, j) * std::conj(psi.amplitude(k, j));
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = s;
    }
  return r;
}

SchmidtForm schmidt_decompose(const PureState& psi) {
  const auto basis = qubit_schmidt_basis(reduced_qubit_state(psi));

  // w_k[j] = sum_i conj(u_k[i]) a_ij
  std::array<std::array<Complex, 3>, 2> w{};
  for (std::size_t k = 0; k < 2; ++k)
    for (int j = 0; j < 3; ++j) {
      Complex s{};
      for (int i = 0; i < 2; ++i) s += std::conj(basis[k][static_cast<std::size_t>(i)]) * psi.amplitude(i, j);
      w[k][static_cast<std::size_t>(j)] = s;
    }
  const double n0 = vec_norm(w[0]);
  const double n1 = vec_norm(w[1]);

  SchmidtForm out;
  out.alpha = std::min(n0, 1.0 / std::sqrt(2.0));

  std::array<Complex, 3> v1 = w[1];
  for (auto& z : v1) z /= n1;  // n1 >= 1/sqrt 2 for a normalized state

  std::array<Complex, 3> v0{};
  if (n0 > 1e-15) {
    v0 = w[0];
    for (auto& z : v0) z /= n0;
    Complex overlap{};
    for (std::size_t j = 0; j < 3; ++j) overlap += std::conj(v1[j]) * v0[j];
    for (std::size_t j = 0; j < 3; ++j) v0[j] -= overlap * v1[j];
  } else {
    // Product state: pick the computational vector least aligned with v1.
    std::size_t best = 0;
    for (std::size_t j = 1; j < 3; ++j)
      if (std::abs(v1[j]) < std::abs(v1[best])) best = j;
    v0[best] = 1.0;
    const Complex overlap = std::conj(v1[best]);
    for (std::size_t j = 0; j < 3; ++j) v0[j] -= overlap * v1[j];
  }
  const double nv0 = vec_norm(v0);
  for (auto& z : v0) z /= nv0;

  // conj(v0 x v1) is orthonormal to both.
  std::array<Complex, 3> v2{std::conj(v0[1] * v1[2] - v0[2] * v1[1]),
                            std::conj(v0[2] * v1[0] - v0[0] * v1[2]),
                            std::conj(v0[0] * v1[1] - v0[1] * v1[0])};
  const Complex ph = leading_phase(v2);
  for (auto& z : v2) z *= ph;

  for (std::size_t r = 0; r < 2; ++r) {
    out.qubit_rotation(r, 0) = basis[0][r];
    out.qubit_rotation(r, 1) = basis[1][r];
  }
  for (std::size_t r = 0; r < 3; ++r) {
    out.qutrit_rotation(r, 0) = v0[r];
    out.qutrit_rotation(r, 1) = v1[r];
    out.qutrit_rotation(r, 2) = v2[r];
  }
  return out;
}

PureState schmidt_reconstruct(const SchmidtForm& form) {
  const double beta = std::sqrt(std::max(0.0, 1.0 - form.alpha * form.alpha));
  PureState::Amplitudes a{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      a[3 * i + j] = form.alpha * form.qubit_rotation(i, 0) * form.qutrit_rotation(j, 0) +
                     beta * form.qubit_rotation(i, 1) * form.qutrit_rotation(j, 1);
  return PureState::normalized(a);
}

bool is_separable(const DensityMatrix& rho, double tolerance) { return negativity(rho) < tolerance; }

Matrix6 local_operator(const Matrix2& qubit_op, const Matrix3& qutrit_op) {
  Matrix6 m;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      const auto ir = static_cast<std::size_t>(qubit_level_of_row(r));
      const auto ic = static_cast<std::size_t>(qubit_level_of_row(c));
      const auto jr = static_cast<std::size_t>(qutrit_level_of_row(r));
      const auto jc = static_cast<std::size_t>(qutrit_level_of_row(c));
      m(r, c) = qubit_op(ir, ic) * qutrit_op(jr, jc);
    }
  return m;
}

DensityMatrix apply_local(const DensityMatrix& rho, const Matrix2& qubit_op, const Matrix3& qutrit_op) {
  const Matrix6 u = local_operator(qubit_op, qutrit_op);
  Matrix6 out = u * rho.matrix() * u.adjoint();
  // Restore exact Hermiticity lost to rounding.
  for (std::size_t r = 0; r < 6; ++r) {
    out(r, r) = out(r, r).real();
    for (std::size_t c = r + 1; c < 6; ++c) {
      const Complex avg = 0.5 * (out(r, c) + std::conj(out(c, r)));
      out(r, c) = avg;
      out(c, r) = std::conj(avg);
    }
  }
  return DensityMatrix::assume_valid(out);
}

double trace_distance(const Matrix6& a, const Matrix6& b) {
  double s = 0.0;
  for (double lam : hermitian_eigenvalues(a - b)) s += std::abs(lam);
  return 0.5 * s;
}

}  // namespace qtesd
