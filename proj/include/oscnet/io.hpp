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

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "oscnet/dynamics.hpp"

namespace oscnet {

/// Shortest round-trip decimal form of x ("%.17g").
std::string format_double(double x);

/// Header: basis,p1_re,p1_im,...,shots,est_s1,est_s2,stderr,f,chi_re,chi_im,chi_err
void write_records_header(std::ostream& os, int modes);
void write_record_row(std::ostream& os, const MeasurementRecord& record);
/// Failure marker row, starting with '#', for a point that could not be processed.
void write_failure_row(std::ostream& os, std::size_t index, const std::string& message);

void write_records_csv(std::ostream& os, const std::vector<MeasurementRecord>& records);

/// Parses the format above; comment rows are skipped. Throws ConfigError on
/// malformed input.
std::vector<MeasurementRecord> read_records_csv(std::istream& is);

}  // namespace oscnet
