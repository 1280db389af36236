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

#include "aligndp/mechanism.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace aligndp {

namespace {

std::string Describe(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

CategoricalDistribution::CategoricalDistribution(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.size() < 2) {
    throw std::invalid_argument(
        "CategoricalDistribution: need at least 2 categories, got " +
        std::to_string(masses_.size()));
  }
  for (std::size_t j = 0; j < masses_.size(); ++j) {
    if (!(masses_[j] >= 0.0 && masses_[j] <= 1.0)) {
      throw std::invalid_argument("CategoricalDistribution: mass[" +
                                  std::to_string(j) + "] = " +
                                  Describe(masses_[j]) + " is not in [0, 1]");
    }
  }
  const double total = std::accumulate(masses_.begin(), masses_.end(), 0.0);
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument(
        "CategoricalDistribution: masses sum to " + Describe(total) +
        ", not 1");
  }
}

RarityPartition::RarityPartition(double alpha, std::vector<bool> is_rare)
    : alpha_(alpha), is_rare_(std::move(is_rare)) {
  for (std::size_t j = 0; j < is_rare_.size(); ++j) {
    (is_rare_[j] ? rare_ : nonrare_).push_back(j);
  }
}

RarityPartition ClassifyRarity(const CategoricalDistribution& dist,
                               double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ClassifyRarity: alpha must be in (0, 1), got " +
                                Describe(alpha));
  }
  std::vector<bool> is_rare(dist.size());
  for (std::size_t j = 0; j < dist.size(); ++j) {
    is_rare[j] = dist[j] < alpha;
  }
  return RarityPartition(alpha, std::move(is_rare));
}

RapporParams DeriveParams(double p, std::size_t k) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("DeriveParams: p must be in [0, 1), got " +
                                Describe(p));
  }
  if (k < 2) {
    throw std::invalid_argument("DeriveParams: k must be >= 2, got " +
                                std::to_string(k));
  }
  RapporParams params;
  params.p = p;
  params.k = k;
  const double off = p / static_cast<double>(k);
  params.q = 1.0 - p + off;
  if (p == 0.0) {
    params.eps_nominal = std::numeric_limits<double>::infinity();
    params.eps_exact = std::numeric_limits<double>::infinity();
  } else {
    params.eps_nominal = std::log((1.0 - p) / p);
    params.eps_exact = std::log(params.q / off);
  }
  return params;
}

double TransitionProbability(const RapporParams& params, std::size_t input,
                             std::size_t output) {
  if (input >= params.k || output >= params.k) {
    throw std::out_of_range("TransitionProbability: category out of range");
  }
  return input == output ? params.q : params.off_diagonal();
}

PrivatizedReport Privatize(std::size_t true_category,
                           const RarityPartition& partition,
                           const RapporParams& params, RandomStream& rng) {
  if (params.k != partition.domain_size()) {
    throw std::invalid_argument(
        "Privatize: params.k = " + std::to_string(params.k) +
        " but partition covers " + std::to_string(partition.domain_size()) +
        " categories");
  }
  if (true_category >= params.k) {
    throw std::out_of_range("Privatize: category " +
                            std::to_string(true_category) +
                            " outside domain of size " +
                            std::to_string(params.k));
  }
  if (partition.IsRare(true_category)) return PrivatizedReport::Shielded();

  std::bernoulli_distribution resample(params.p);
  if (!resample(rng)) return PrivatizedReport::Reported(true_category);
  std::uniform_int_distribution<std::size_t> uniform(0, params.k - 1);
  return PrivatizedReport::Reported(uniform(rng));
}

std::vector<PrivatizedReport> PrivatizeAll(
    std::span<const std::size_t> true_categories,
    const RarityPartition& partition, const RapporParams& params,
    RandomStream& rng) {
  std::vector<PrivatizedReport> reports;
  reports.reserve(true_categories.size());
  for (std::size_t category : true_categories) {
    reports.push_back(Privatize(category, partition, params, rng));
  }
  return reports;
}

std::vector<double> Debias(std::span<const std::uint64_t> histogram,
                           std::uint64_t n, const RapporParams& params) {
  if (n == 0) throw std::invalid_argument("Debias: n must be positive");
  if (histogram.size() != params.k) {
    throw std::invalid_argument(
        "Debias: histogram has " + std::to_string(histogram.size()) +
        " bins, expected k = " + std::to_string(params.k));
  }
  const std::uint64_t reported =
      std::accumulate(histogram.begin(), histogram.end(), std::uint64_t{0});
  if (reported > n) {
    throw std::invalid_argument("Debias: histogram total " +
                                std::to_string(reported) + " exceeds n = " +
                                std::to_string(n));
  }
  const double total = static_cast<double>(n);
  std::vector<double> fractions(histogram.size());
  for (std::size_t j = 0; j < histogram.size(); ++j) {
    fractions[j] = static_cast<double>(histogram[j]) / total;
  }
  return DebiasFrequencies(fractions, params);
}

std::vector<double> DebiasFrequencies(std::span<const double> report_fractions,
                                      const RapporParams& params) {
  if (report_fractions.size() != params.k) {
    throw std::invalid_argument(
        "DebiasFrequencies: got " + std::to_string(report_fractions.size()) +
        " fractions, expected k = " + std::to_string(params.k));
  }
  const double off = params.off_diagonal();
  const double scale = 1.0 - params.p;
  std::vector<double> estimates(report_fractions.size());
  for (std::size_t j = 0; j < report_fractions.size(); ++j) {
    estimates[j] = (report_fractions[j] - off) / scale;
  }
  return estimates;
}

double EstimatorVarianceBound(const RapporParams& params, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("EstimatorVarianceBound: n must be positive");
  }
  return params.p * (1.0 - params.p) / static_cast<double>(n);
}

PacBounds ComputePacBounds(std::uint64_t n, double alpha, double mu) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(
        "ComputePacBounds: alpha must be in (0, 1), got " + Describe(alpha));
  }
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("ComputePacBounds: mu must be >= 0, got " +
                                Describe(mu));
  }
  if (mu >= alpha) {
    throw std::invalid_argument(
        "ComputePacBounds: mu = " + Describe(mu) + " >= alpha = " +
        Describe(alpha) + "; PAC shielding does not apply to non-rare mass");
  }
  const double samples = static_cast<double>(n);
  const double gap = alpha - mu;
  PacBounds bounds;
  bounds.hoeffding_gap = std::exp(-2.0 * samples * gap * gap);
  bounds.hoeffding_alpha = std::exp(-2.0 * samples * alpha * alpha);
  bounds.empirical_fit = std::exp(-samples * gap);
  return bounds;
}

}  // namespace aligndp
