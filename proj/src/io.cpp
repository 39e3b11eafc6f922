// Copyright 2026 The oscnet Authors
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

#include "oscnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace oscnet {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_records_header(std::ostream& os, int modes) {
  os << "basis";
  for (int j = 1; j <= modes; ++j) os << ",p" << j << "_re,p" << j << "_im";
  os << ",shots,est_s1,est_s2,stderr,f,chi_re,chi_im,chi_err\n";
}

void write_record_row(std::ostream& os, const MeasurementRecord& r) {
  os << to_string(r.basis);
  for (Eigen::Index j = 0; j < r.point.size(); ++j) {
    os << ',' << format_double(r.point[j].real()) << ',' << format_double(r.point[j].imag());
  }
  os << ',' << r.shots << ',' << format_double(r.est_s1) << ',' << format_double(r.est_s2) << ','
     << format_double(r.stderr_) << ',' << format_double(r.f) << ','
     << format_double(r.chi_corrected.real()) << ',' << format_double(r.chi_corrected.imag()) << ','
     << format_double(r.chi_err) << '\n';
}

void write_failure_row(std::ostream& os, std::size_t index, const std::string& message) {
  std::string clean = message;
  for (char& c : clean) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  os << "# FAILED point " << index << ": " << clean << '\n';
}

void write_records_csv(std::ostream& os, const std::vector<MeasurementRecord>& records) {
  if (records.empty()) throw InvalidArgument("no records to write");
  write_records_header(os, static_cast<int>(records.front().point.size()));
  for (const auto& r : records) write_record_row(os, r);
}

std::vector<MeasurementRecord> read_records_csv(std::istream& is) {
  std::string line;
  std::vector<MeasurementRecord> out;
  int modes = -1;
  std::size_t lineno = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(lineno) + ": bad number '" + s + "'");
    }
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (modes < 0) {
      if (cells.empty() || cells[0] != "basis" || cells.size() < 9 || (cells.size() - 9) % 2 != 0) {
        throw ConfigError("records CSV has an unexpected header");
      }
      modes = static_cast<int>((cells.size() - 9) / 2);
      continue;
    }
    if (cells.size() != static_cast<std::size_t>(2 * modes + 9)) {
      throw ConfigError("line " + std::to_string(lineno) + ": wrong number of columns");
    }
    MeasurementRecord r;
    try {
      r.basis = parse_basis(cells[0]);
    } catch (const Error&) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown basis '" + cells[0] + "'");
    }
    r.point.resize(modes);
    for (int j = 0; j < modes; ++j) r.point[j] = {num(cells[1 + 2 * j]), num(cells[2 + 2 * j])};
    std::size_t c = 1 + 2 * static_cast<std::size_t>(modes);
    const double shots = num(cells[c++]);
    if (shots < 0.0) throw ConfigError("line " + std::to_string(lineno) + ": negative shots");
    r.shots = static_cast<std::uint64_t>(shots);
    r.est_s1 = num(cells[c++]);
    r.est_s2 = num(cells[c++]);
    r.stderr_ = num(cells[c++]);
    r.f = num(cells[c++]);
    const double re = num(cells[c++]);
    const double im = num(cells[c++]);
    r.chi_corrected = {re, im};
    r.chi_err = num(cells[c++]);
    r.over_amplified = std::exp(r.f) > 100.0;
    out.push_back(std::move(r));
  }
  if (modes < 0) throw ConfigError("records CSV is empty");
  return out;
}

}  // namespace oscnet
