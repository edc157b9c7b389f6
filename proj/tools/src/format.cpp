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

#include "qtesd/cli/format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qtesd::cli {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const double ax = std::abs(x);
  if (ax >= 1e-4 && ax < 1e6) {
    const int exponent = static_cast<int>(std::floor(std::log10(ax)));
    std::snprintf(buf, sizeof buf, "%.*f", std::max(0, 11 - exponent), x);
  } else {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  }
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out_ << ',';
    out_ << fields[k];
  }
  out_ << '\n';
}

}  // namespace qtesd::cli
