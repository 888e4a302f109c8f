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


#include "magnon/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magnon {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

bool parse_double(const std::string& s, double& x) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) { row({}, values); }

void CsvWriter::row(const std::vector<std::string>& labels, const std::vector<double>& values) {
  if (labels.size() + values.size() != columns_) throw std::logic_error("CSV row width does not match header");
  bool first = true;
  for (const auto& l : labels) {
    out_ << (first ? "" : ",") << l;
    first = false;
  }
  for (double v : values) {
    out_ << (first ? "" : ",") << format_double(v);
    first = false;
  }
  out_ << '\n';
}

FitData read_fit_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open data file '" + path + "'");
  std::string line;
  int ti = 0, yi = 1, si = -1;
  bool first = true;
  std::vector<double> t, y, s;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const auto cells = split(line);
    if (first) {
      first = false;
      double probe;
      if (cells.empty() || !parse_double(cells[0], probe)) {
        for (size_t k = 0; k < cells.size(); ++k) {
          if (cells[k] == "t") ti = static_cast<int>(k);
          else if (cells[k] == "y") yi = static_cast<int>(k);
          else if (cells[k] == "sigma") si = static_cast<int>(k);
        }
        if (si < 0 && cells.size() >= 3) si = 2;
        continue;
      }
      if (cells.size() >= 3) si = 2;
    }
    const int need = std::max({ti, yi, si}) + 1;
    if (static_cast<int>(cells.size()) < need)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": too few columns");
    double a, b, c = 0.0;
    if (!parse_double(cells[ti], a) || !parse_double(cells[yi], b) || (si >= 0 && !parse_double(cells[si], c)))
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": not a number");
    if (si >= 0 && !(c > 0.0))
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": sigma must be positive");
    t.push_back(a);
    y.push_back(b);
    if (si >= 0) s.push_back(c);
  }
  if (t.empty()) throw std::invalid_argument("data file '" + path + "' has no rows");
  FitData d;
  d.t = Eigen::Map<RVec>(t.data(), t.size());
  d.y = Eigen::Map<RVec>(y.data(), y.size());
  if (!s.empty()) d.sigma = Eigen::Map<RVec>(s.data(), s.size());
  return d;
}

}  // namespace magnon
