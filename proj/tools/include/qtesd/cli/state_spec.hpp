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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qtesd/dynamics.hpp"
#include "qtesd/state.hpp"

namespace qtesd::cli {

class SpecParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Amplitude-form inputs must be normalized within this before rescaling.
inline constexpr double kSpecNormTolerance = 1e-9;

struct ParsedState {
  StateFamily family;
  std::optional<PureState> pure;  ///< set for pure families and amplitude form
};

/// Parses either
///   family=<phi1|phi2plus|phi2minus|phi2prime|phi3plus|phi3minus> alpha=<r> beta=<r>
///   family=mixed b=<r> c=<r>
/// or the amplitude form `a00=<re>[+<im>i] a11=...` listing nonzero a_ij.
/// Throws SpecParseError naming the offending token.
ParsedState parse_state_spec(std::string_view text);

/// `<re>`, `<re>+<im>i` or `<re>-<im>i`.
Complex parse_complex(std::string_view token);

/// Amplitude form of a pure state with round-trip precision.
std::string format_amplitude_spec(const PureState& psi);

}  // namespace qtesd::cli
