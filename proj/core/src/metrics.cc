// Copyright 2026 The AlignDP Authors
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

#include "aligndp/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aligndp {

namespace {

void CheckPair(std::span<const double> a, std::span<const double> b,
               const char* where) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument(std::string(where) + ": empty input");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(where) + ": length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

std::vector<std::size_t> TopIndices(std::span<const double> values,
                                    std::size_t count) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] > values[b];
                   });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

double KlDivergence(std::span<const double> truth,
                    std::span<const double> estimate) {
  CheckPair(truth, estimate, "KlDivergence");
  std::vector<double> est(estimate.begin(), estimate.end());
  for (double& e : est) e = std::max(e, kKlFloor);
  const double est_total = std::accumulate(est.begin(), est.end(), 0.0);
  const double true_total = std::accumulate(truth.begin(), truth.end(), 0.0);
  if (!(true_total > 0.0)) {
    throw std::invalid_argument("KlDivergence: truth has no positive mass");
  }
  double kl = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (truth[j] < 0.0) {
      throw std::invalid_argument("KlDivergence: negative true mass");
    }
    if (truth[j] == 0.0) continue;
    const double t = truth[j] / true_total;
    kl += t * std::log(t / (est[j] / est_total));
  }
  return kl;
}

double TopKAccuracy(std::span<const double> truth,
                    std::span<const double> estimate, std::size_t k_top) {
  CheckPair(truth, estimate, "TopKAccuracy");
  if (k_top == 0) throw std::invalid_argument("TopKAccuracy: k_top is 0");
  const std::size_t count = std::min(k_top, truth.size());
  const std::vector<std::size_t> a = TopIndices(truth, count);
  const std::vector<std::size_t> b = TopIndices(estimate, count);
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(count);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double SpearmanRho(std::span<const double> truth,
                   std::span<const double> estimate) {
  CheckPair(truth, estimate, "SpearmanRho");
  const std::vector<double> ra = AverageRanks(truth);
  const std::vector<double> rb = AverageRanks(estimate);
  const double n = static_cast<double>(ra.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t j = 0; j < ra.size(); ++j) {
    const double da = ra[j] - mean;
    const double db = rb[j] - mean;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

double MeanAbsoluteError(std::span<const double> truth,
                         std::span<const double> estimate) {
  CheckPair(truth, estimate, "MeanAbsoluteError");
  double total = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    total += std::abs(truth[j] - estimate[j]);
  }
  return total / static_cast<double>(truth.size());
}

double MeanSquaredError(std::span<const double> truth,
                        std::span<const double> estimate) {
  CheckPair(truth, estimate, "MeanSquaredError");
  double total = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    const double d = truth[j] - estimate[j];
    total += d * d;
  }
  return total / static_cast<double>(truth.size());
}

}  // namespace aligndp
