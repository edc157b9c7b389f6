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
#include <stdexcept>

namespace qtesd {

/// Row/column index of the 6-dimensional product space. Rows run in
/// descending level order: 0 <-> |1,2>, 1 <-> |1,1>, 2 <-> |1,0>,
/// 3 <-> |0,2>, 4 <-> |0,1>, 5 <-> |0,0>, i.e. row = 3(1-i) + (2-j)
/// for qubit level i and qutrit level j.
class BasisIndex {
 public:
  static constexpr std::size_t kSize = 6;

  constexpr BasisIndex(int qubit_level, int qutrit_level)
      : row_(checked_row(qubit_level, qutrit_level)) {}

  static constexpr BasisIndex from_row(std::size_t row) {
    if (row >= kSize) throw std::domain_error("BasisIndex: row out of range");
    return BasisIndex(1 - static_cast<int>(row / 3), 2 - static_cast<int>(row % 3));
  }

  constexpr std::size_t row() const { return row_; }
  constexpr int qubit_level() const { return 1 - static_cast<int>(row_ / 3); }
  constexpr int qutrit_level() const { return 2 - static_cast<int>(row_ % 3); }

  friend constexpr bool operator==(BasisIndex, BasisIndex) = default;

 private:
  static constexpr std::size_t checked_row(int i, int j) {
    if (i < 0 || i > 1) throw std::domain_error("BasisIndex: qubit level must be 0 or 1");
    if (j < 0 || j > 2) throw std::domain_error("BasisIndex: qutrit level must be 0, 1 or 2");
    return static_cast<std::size_t>(3 * (1 - i) + (2 - j));
  }

  std::size_t row_;
};

constexpr BasisIndex basis_index(int qubit_level, int qutrit_level) {
  return BasisIndex(qubit_level, qutrit_level);
}

/// Qubit level of a matrix row.
constexpr int qubit_level_of_row(std::size_t row) { return 1 - static_cast<int>(row / 3); }
/// Qutrit level of a matrix row.
constexpr int qutrit_level_of_row(std::size_t row) { return 2 - static_cast<int>(row % 3); }

}  // namespace qtesd
