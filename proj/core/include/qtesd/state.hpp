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

#include <array>
#include <cstddef>

#include "qtesd/basis.hpp"
#include "qtesd/matrix.hpp"

namespace qtesd {

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
/// Partial-transpose eigenvalues in (-kNegativityTolerance, 0) count as zero.
inline constexpr double kNegativityTolerance = 1e-10;
inline constexpr double kSeparabilityTolerance = 1e-10;

/// Normalized qubit-qutrit state vector sum_ij a_ij |i,j>.
///
/// Amplitudes are stored in the flat order a_1 = a_00, a_2 = a_01, ...,
/// a_6 = a_12, i.e. flat index 3i + j.
class PureState {
 public:
  using Amplitudes = std::array<Complex, 6>;

  /// Throws std::domain_error unless sum |a|^2 = 1 within kNormTolerance
  /// and all components are finite.
  explicit PureState(const Amplitudes& amps);

  /// Rescales to unit norm. Throws std::domain_error for the zero vector.
  static PureState normalized(Amplitudes amps);

  static PureState product(int qubit_level, int qutrit_level);

  Complex amplitude(int qubit_level, int qutrit_level) const;
  /// 1-based flat access: x = 1..6.
  Complex flat(int x) const;
  const Amplitudes& amplitudes() const { return amps_; }

  /// Coefficients in matrix-row order (see BasisIndex).
  std::array<Complex, 6> as_column() const;

 private:
  Amplitudes amps_{};
};

enum class Subsystem { Qubit, Qutrit };

/// Hermitian, unit-trace, positive semidefinite 6x6 matrix in the
/// descending basis order of BasisIndex.
class DensityMatrix {
 public:
  /// Validates the invariants (Hermitian within kHermitianTolerance, trace
  /// within kTraceTolerance, eigenvalues >= -kPositivityTolerance) and
  /// throws std::domain_error on violation.
  static DensityMatrix from_matrix(const Matrix6& m);

  /// Wraps a matrix the caller has already produced from a valid state by
  /// a trace- and Hermiticity-preserving map. No checks.
  static DensityMatrix assume_valid(const Matrix6& m) { return DensityMatrix(m); }

  static DensityMatrix maximally_mixed();

  const Matrix6& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  double trace() const { return m_.trace().real(); }

 private:
  explicit DensityMatrix(const Matrix6& m) : m_(m) {}
  Matrix6 m_;
};

DensityMatrix pure_to_density(const PureState& psi);

Matrix6 partial_transpose(const Matrix6& m, Subsystem subsystem = Subsystem::Qutrit);
Matrix6 partial_transpose(const DensityMatrix& rho, Subsystem subsystem = Subsystem::Qutrit);

/// Twice the absolute sum of the negative eigenvalues of the partial
/// transpose; eigenvalues above -kNegativityTolerance are ignored.
double negativity(const Matrix6& rho, Subsystem subsystem = Subsystem::Qutrit);
double negativity(const DensityMatrix& rho, Subsystem subsystem = Subsystem::Qutrit);

/// Number of partial-transpose eigenvalues below -kNegativityTolerance.
int negative_pt_eigenvalue_count(const DensityMatrix& rho);

/// Local-unitary invariant of a pure state: the sum of the squared moduli
/// of the 2x2 minors of the coefficient matrix [a_ij], written out term by
/// term. 0 for product states, 1/4 at maximal entanglement.
double f_invariant(const PureState& psi);

/// Closed-form spectrum {0, 0, -sqrt f, sqrt f, (1 -/+ sqrt(1-4f))/2} of the
/// partial transpose of |psi><psi|, sorted ascending.
std::array<double, 6> pt_spectrum_pure(const PureState& psi);

/// psi = (U_A (x) U_B)(alpha |0,0> + sqrt(1 - alpha^2) |1,1>).
struct SchmidtForm {
  double alpha = 0.0;        ///< in [0, 1/sqrt 2]
  Matrix2 qubit_rotation;    ///< columns are the qubit Schmidt vectors
  Matrix3 qutrit_rotation;   ///< columns are the qutrit Schmidt vectors, then the completion
};

/// Schmidt decomposition via the 2x2 reduced qubit state. The first
/// nonzero component of each qubit Schmidt vector is real and nonnegative;
/// a degenerate reduced state (alpha = 1/sqrt 2) uses the computational
/// basis on the qubit.
SchmidtForm schmidt_decompose(const PureState& psi);

/// Rebuilds the state vector described by a Schmidt form.
PureState schmidt_reconstruct(const SchmidtForm& form);

/// PPT test, which decides separability for 2x3 systems.
bool is_separable(const DensityMatrix& rho, double tolerance = kSeparabilityTolerance);

/// U_A (x) U_B in the descending basis; both operators are given in level
/// order (row/column k is level k).
Matrix6 local_operator(const Matrix2& qubit_op, const Matrix3& qutrit_op);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
DensityMatrix apply_local(const DensityMatrix& rho, const Matrix2& qubit_op, const Matrix3& qutrit_op);

/// Reduced qubit state Tr_B |psi><psi| in level order.
Matrix2 reduced_qubit_state(const PureState& psi);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const Matrix6& a, const Matrix6& b);

}  // namespace qtesd
