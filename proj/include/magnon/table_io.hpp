// Copyright 2026 The magnonsim Authors
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

#include <ostream>
#include <string>
#include <vector>

#include "magnon/fitting.hpp"

namespace magnon {

/// Shortest round-trip-safe text for a double (17 significant digits, no
/// locale). NaN is written as "nan".
std::string format_double(double x);

/// Minimal CSV writer: fixed header, "\n" line endings, doubles via format_double.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<double>& values);
  /// Rows with leading text columns (e.g. state labels).
  void row(const std::vector<std::string>& labels, const std::vector<double>& values);

 private:
  std::ostream& out_;
  size_t columns_;
};

/// Reads columns t, y and optionally sigma from a CSV file. A first line that
/// does not parse as numbers is treated as a header; columns are then looked
/// up by the names t/y/sigma, falling back to positions 0/1/2.
FitData read_fit_csv(const std::string& path);

}  // namespace magnon
