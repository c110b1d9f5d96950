// Copyright 2026 The purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "purify/histogram_fit.hpp"

namespace purify {

/// One row of a delimiter-separated two-column file. Lines starting with '#'
/// and a leading non-numeric header line are skipped; columns may be
/// separated by commas, tabs or spaces.
struct DataRow {
  double key = 0.0;
  double value = 0.0;
};

std::vector<DataRow> read_two_column(std::istream& in, const std::string& source_name);
std::vector<DataRow> read_two_column_file(const std::string& path);

/// Rows of (peak_index, counts). Peak 0 is the central peak; `side` is the
/// mean over every other listed peak.
PeakCounts peaks_to_counts(const std::vector<DataRow>& peaks, double repetition_rate,
                           double integration_time);

/// Bins rows of (time_bin_ns, counts) into peaks: bin t belongs to peak
/// floor(t / T + 1/2) with T = 1e9 / repetition_rate ns, i.e. a window of
/// +-T/2 around each multiple of the pulse period.
std::vector<DataRow> histogram_to_peaks(const std::vector<DataRow>& histogram,
                                        double repetition_rate);

/// "key = value" lines.
void write_fit_report(std::ostream& out, const FitResult& r);

}  // namespace purify
