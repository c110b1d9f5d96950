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

#include "purify/peak_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace purify {

namespace {

bool parse_number(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

std::vector<DataRow> read_two_column(std::istream& in, const std::string& source_name) {
  std::vector<DataRow> rows;
  std::string line;
  int line_no = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    DataRow row;
    const bool numeric = fields.size() == 2 && parse_number(fields[0], row.key) &&
                         parse_number(fields[1], row.value);
    if (!numeric) {
      if (rows.empty() && !header_skipped && !parse_number(fields[0], row.key)) {
        header_skipped = true;
        continue;
      }
      throw InvalidArgument(source_name + ":" + std::to_string(line_no) +
                            ": expected two numeric columns");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw InvalidArgument(source_name + ": no data rows");
  return rows;
}

std::vector<DataRow> read_two_column_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return read_two_column(in, path);
}

PeakCounts peaks_to_counts(const std::vector<DataRow>& peaks, double repetition_rate,
                           double integration_time) {
  PeakCounts out;
  out.repetition_rate = repetition_rate;
  out.integration_time = integration_time;
  bool have_central = false;
  double side_sum = 0.0;
  int side_peaks = 0;
  for (const DataRow& p : peaks) {
    if (p.value < 0.0) throw InvalidArgument("peak counts must be non-negative");
    if (std::lround(p.key) == 0) {
      out.central += p.value;
      have_central = true;
    } else {
      side_sum += p.value;
      ++side_peaks;
    }
  }
  if (!have_central) throw InvalidArgument("peak file has no central peak (index 0)");
  if (side_peaks == 0) throw InvalidArgument("peak file has no side peaks");
  out.side = side_sum / side_peaks;
  out.validate();
  return out;
}

std::vector<DataRow> histogram_to_peaks(const std::vector<DataRow>& histogram,
                                        double repetition_rate) {
  if (!(repetition_rate > 0.0)) throw InvalidArgument("repetition rate must be positive");
  const double period_ns = 1e9 / repetition_rate;
  std::map<long, double> sums;
  for (const DataRow& bin : histogram) {
    if (bin.value < 0.0) throw InvalidArgument("histogram counts must be non-negative");
    sums[static_cast<long>(std::floor(bin.key / period_ns + 0.5))] += bin.value;
  }
  std::vector<DataRow> peaks;
  peaks.reserve(sums.size());
  for (const auto& [index, total] : sums) peaks.push_back({static_cast<double>(index), total});
  return peaks;
}

void write_fit_report(std::ostream& out, const FitResult& r) {
  const auto old_precision = out.precision(10);
  out << "t = " << r.t << '\n'
      << "V = " << r.v << '\n'
      << "residual = " << r.residual << '\n'
      << "sigma_t = " << r.sigma_t << '\n'
      << "sigma_V = " << r.sigma_v << '\n';
  out.precision(old_precision);
}

}  // namespace purify
