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

#include "purify/dephasing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace purify {

void OverlapMoments::validate() const {
  if (!(pair >= 0.0 && pair <= 1.0)) throw InvalidArgument("OverlapMoments: pair outside [0, 1]");
  if (!(std::abs(triple) <= 1.0)) throw InvalidArgument("OverlapMoments: triple outside [-1, 1]");
  if (!(std::abs(quad) <= 1.0)) throw InvalidArgument("OverlapMoments: quad outside [-1, 1]");
}

double pd_coincidence(const OverlapMoments& m) {
  m.validate();
  const double p = m.pair;
  const double value = (1.0 + p + p * p - 2.0 * m.triple - m.quad) / (2.0 * (1.0 + p) * (1.0 + p));
  constexpr double kSlack = 1e-12;
  if (value < -kSlack || value > 0.5 + kSlack) {
    throw NumericalError("pd_coincidence: " + std::to_string(value) +
                         " outside [0, 0.5], moments are inconsistent");
  }
  return std::clamp(value, 0.0, 0.5);
}

double pd_purified(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("pd_purified: x must be non-negative");
  const double num = ((x + 5.0) * x + 8.0) * x + 3.0;
  const double x1 = x + 1.0;
  return std::sqrt(num / ((2.0 * x + 3.0) * x1 * x1 * x1));
}

double dephasing_ratio_for(double raw_visibility) {
  if (!(raw_visibility > 0.0 && raw_visibility <= 1.0)) {
    throw InvalidArgument("dephasing_ratio_for: raw visibility must lie in (0, 1]");
  }
  return 1.0 / raw_visibility - 1.0;
}

namespace {

struct SampleMoments {
  double pair = 0.0;
  Complex triple = 0.0;
  Complex quad = 0.0;
};

SampleMoments moments_of(const ComplexMatrix& a) {
  const auto n = static_cast<int>(a.rows());
  SampleMoments out;
  int pairs = 0;
  int triangles = 0;
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.pair += std::norm(a(i, j));
      ++pairs;
      for (int k = j + 1; k < n; ++k) {
        out.triple += a(i, j) * a(j, k) * a(k, i);
        ++triangles;
        for (int l = k + 1; l < n; ++l) {
          const std::array<std::array<int, 4>, 3> orders = {
              {{i, j, k, l}, {i, j, l, k}, {i, k, j, l}}};
          for (const auto& o : orders) {
            out.quad += a(o[0], o[1]) * a(o[1], o[2]) * a(o[2], o[3]) * a(o[3], o[0]);
            ++cycles;
          }
        }
      }
    }
  }
  out.pair /= pairs;
  out.triple /= static_cast<double>(triangles);
  out.quad /= static_cast<double>(cycles);
  return out;
}

}  // namespace

MomentEstimate estimate_moments(std::span<const DistinguishabilityMatrix> samples) {
  if (samples.size() < 2) throw InvalidArgument("estimate_moments: need at least two samples");
  const auto count = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd values(count, 3);
  Complex triple_sum = 0.0;
  Complex quad_sum = 0.0;
  for (Eigen::Index s = 0; s < count; ++s) {
    if (samples[s].size() < 4) throw InvalidArgument("estimate_moments: samples need 4 photons");
    const SampleMoments m = moments_of(samples[s].matrix());
    values(s, 0) = m.pair;
    values(s, 1) = m.triple.real();
    values(s, 2) = m.quad.real();
    triple_sum += m.triple;
    quad_sum += m.quad;
  }
  const Eigen::RowVector3d mean = values.colwise().mean();
  const Eigen::MatrixXd centered = values.rowwise() - mean;
  const Eigen::Matrix3d cov = centered.transpose() * centered / static_cast<double>(count - 1);
  const Eigen::Matrix3d cov_of_mean = cov / static_cast<double>(count);

  MomentEstimate est;
  est.samples = static_cast<int>(count);
  est.mean = {mean(0), mean(1), mean(2)};
  est.standard_error = {std::sqrt(cov_of_mean(0, 0)), std::sqrt(cov_of_mean(1, 1)),
                        std::sqrt(cov_of_mean(2, 2))};
  est.triple_imag = std::abs(triple_sum.imag()) / static_cast<double>(count);
  est.quad_imag = std::abs(quad_sum.imag()) / static_cast<double>(count);

  const double p = est.mean.pair;
  const double q1 = 1.0 + p;
  const double numerator = 1.0 + p + p * p - 2.0 * est.mean.triple - est.mean.quad;
  const Eigen::Vector3d grad(((1.0 + 2.0 * p) * q1 - 2.0 * numerator) / (2.0 * q1 * q1 * q1),
                             -1.0 / (q1 * q1), -0.5 / (q1 * q1));
  est.purified = 1.0 - 2.0 * pd_coincidence(est.mean);
  est.purified_se = 2.0 * std::sqrt(std::max(0.0, grad.dot(cov_of_mean * grad)));
  return est;
}

}  // namespace purify
