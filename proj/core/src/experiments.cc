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

#include "aligndp/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <variant>

#include "aligndp/accountant.h"
#include "aligndp/metrics.h"

namespace aligndp {

namespace {

// Lanes separate the sampling and privatization streams of one run, so the
// same records are drawn whatever p is.
constexpr std::uint64_t kSampleLane = 0;
constexpr std::uint64_t kPrivatizeLane = 1;

// Calls fn(i) for i in [0, count) on up to `threads` workers. fn must only
// write to per-index state.
template <typename Fn>
void ParallelFor(std::size_t count, unsigned threads, Fn fn) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(std::max(threads, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

PrivacyLedger UnlimitedLedger() {
  return PrivacyLedger(std::numeric_limits<double>::infinity(),
                       CompositionMode::kBasic);
}

ReleaseBundle Release(std::span<const std::size_t> records,
                      const Population& pop, const RapporParams& params,
                      PrivacyLedger& ledger, RandomStream& rng,
                      std::optional<double> max_rare_mass) {
  const std::vector<PrivatizedReport> reports =
      PrivatizeAll(records, pop.partition, params, rng);
  AggregateOutcome outcome =
      Aggregate(reports, pop.partition, params, ledger, max_rare_mass);
  if (auto* refusal = std::get_if<Refusal>(&outcome)) {
    throw std::runtime_error("release refused: " + refusal->reason);
  }
  return std::get<ReleaseBundle>(std::move(outcome));
}

std::vector<double> NonrareTruth(const Population& pop) {
  std::vector<double> truth;
  for (std::size_t j : pop.partition.nonrare()) truth.push_back(pop.dist[j]);
  return truth;
}

std::vector<double> NonrareEstimates(const Population& pop,
                                     const ReleaseBundle& bundle) {
  std::vector<double> est;
  for (std::size_t j : pop.partition.nonrare()) {
    est.push_back(bundle.nonrare_estimates.at(j));
  }
  return est;
}

double MaxRareMass(const Population& pop) {
  double mass = 0.0;
  for (std::size_t j : pop.partition.rare()) mass = std::max(mass, pop.dist[j]);
  return mass;
}

// One sample + release at size n on the given streams.
ReleaseBundle SampleAndRelease(const Population& pop,
                               const RapporParams& params, std::uint64_t n,
                               RandomStream& sample_rng,
                               RandomStream& privatize_rng) {
  const std::vector<std::size_t> records =
      SampleRecords(pop.dist, n, sample_rng);
  PrivacyLedger ledger = UnlimitedLedger();
  return Release(records, pop, params, ledger, privatize_rng,
                 MaxRareMass(pop));
}

}  // namespace

Population MakeDistribution(const SimConfig& cfg) {
  Validate(cfg);
  std::vector<double> masses(cfg.k, 0.0);
  for (std::size_t j = 0; j < cfg.rare_count; ++j) masses[j] = cfg.rare_mass;
  const double remaining =
      1.0 - static_cast<double>(cfg.rare_count) * cfg.rare_mass;
  double weight_total = 0.0;
  for (std::size_t j = cfg.rare_count; j < cfg.k; ++j) {
    const double rank = static_cast<double>(j - cfg.rare_count + 1);
    masses[j] = std::pow(rank, -cfg.zipf_exponent);
    weight_total += masses[j];
  }
  for (std::size_t j = cfg.rare_count; j < cfg.k; ++j) {
    masses[j] = remaining * masses[j] / weight_total;
  }
  CategoricalDistribution dist(std::move(masses));
  RarityPartition partition = ClassifyRarity(dist, cfg.alpha);
  return Population{std::move(dist), std::move(partition)};
}

std::vector<std::size_t> SampleRecords(const CategoricalDistribution& dist,
                                       std::uint64_t n, RandomStream& rng) {
  std::discrete_distribution<std::size_t> draw(dist.masses().begin(),
                                               dist.masses().end());
  std::vector<std::size_t> records(n);
  for (std::size_t& r : records) r = draw(rng);
  return records;
}

FreqResult RunFrequencyRecovery(const SimConfig& cfg) {
  const Population pop = MakeDistribution(cfg);
  const RapporParams params = DeriveParams(cfg.p, cfg.k);
  RandomStream sample_rng =
      DeriveStream(cfg.seed, StreamPurpose::kFrequencyRecovery, {kSampleLane});
  RandomStream privatize_rng = DeriveStream(
      cfg.seed, StreamPurpose::kFrequencyRecovery, {kPrivatizeLane});
  const ReleaseBundle bundle = SampleAndRelease(pop, params, cfg.n_default,
                                                sample_rng, privatize_rng);
  FreqResult result;
  for (std::size_t j = 0; j < cfg.k; ++j) {
    FreqRow row;
    row.category_index = j;
    row.true_freq = pop.dist[j];
    row.is_rare = pop.partition.IsRare(j);
    row.suppressed = row.is_rare;
    row.estimated_freq = row.is_rare ? 0.0 : bundle.nonrare_estimates.at(j);
    result.rows.push_back(row);
  }
  return result;
}

MseResult RunMseDecay(const SimConfig& cfg, const RunOptions& options) {
  const Population pop = MakeDistribution(cfg);
  const RapporParams params = DeriveParams(cfg.p, cfg.k);
  const std::vector<double> truth = NonrareTruth(pop);
  const std::size_t runs = cfg.runs;

  MseResult result;
  result.rows.resize(cfg.n_grid.size() * runs);
  ParallelFor(result.rows.size(), options.threads, [&](std::size_t i) {
    const std::uint64_t n = cfg.n_grid[i / runs];
    const std::uint64_t run = i % runs;
    RandomStream sample_rng =
        DeriveStream(cfg.seed, StreamPurpose::kMseDecay, {n, run, kSampleLane});
    RandomStream privatize_rng = DeriveStream(
        cfg.seed, StreamPurpose::kMseDecay, {n, run, kPrivatizeLane});
    const ReleaseBundle bundle =
        SampleAndRelease(pop, params, n, sample_rng, privatize_rng);
    result.rows[i] = {n, run,
                      MeanSquaredError(truth, NonrareEstimates(pop, bundle))};
  });

  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    double sum = 0.0;
    for (std::size_t r = 0; r < runs; ++r) sum += result.rows[g * runs + r].mse;
    const double mean = sum / static_cast<double>(runs);
    double sq = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const double d = result.rows[g * runs + r].mse - mean;
      sq += d * d;
    }
    result.summary.push_back(
        {cfg.n_grid[g], mean, std::sqrt(sq / static_cast<double>(runs - 1))});
  }
  return result;
}

AttackResult RunExtraction(const SimConfig& cfg) {
  const Population pop = MakeDistribution(cfg);
  const RapporParams params = DeriveParams(cfg.p, cfg.k);
  const std::vector<double> truth = NonrareTruth(pop);
  const std::vector<std::size_t>& rare = pop.partition.rare();

  RandomStream sample_rng =
      DeriveStream(cfg.seed, StreamPurpose::kExtraction, {kSampleLane});
  const std::vector<std::size_t> records =
      SampleRecords(pop.dist, cfg.n_default, sample_rng);

  AttackResult result;
  for (std::uint64_t queries : cfg.query_budgets) {
    PrivacyLedger ledger = UnlimitedLedger();
    std::vector<double> average(truth.size(), 0.0);
    for (std::uint64_t q = 0; q < queries; ++q) {
      RandomStream rng = DeriveStream(cfg.seed, StreamPurpose::kExtraction,
                                      {kPrivatizeLane, queries, q});
      const ReleaseBundle bundle =
          Release(records, pop, params, ledger, rng, MaxRareMass(pop));
      const std::vector<double> est = NonrareEstimates(pop, bundle);
      for (std::size_t j = 0; j < est.size(); ++j) average[j] += est[j];
    }
    for (double& a : average) a /= static_cast<double>(queries);

    double nonrare_total = 0.0;
    for (double a : average) nonrare_total += a;
    const double rare_guess =
        (1.0 - nonrare_total) / static_cast<double>(rare.size());
    double mae = 0.0;
    for (std::size_t j : rare) mae += std::abs(pop.dist[j] - rare_guess);
    mae /= static_cast<double>(rare.size());

    result.rows.push_back({queries, mae, SpearmanRho(truth, average)});
  }
  return result;
}

PacResult RunPacValidation(const SimConfig& cfg, const RunOptions& options) {
  const Population pop = MakeDistribution(cfg);
  PacResult result;
  result.designated_category = pop.partition.rare().front();
  result.designated_mass = pop.dist[result.designated_category];
  const std::size_t runs = cfg.pac_runs;

  std::vector<char> hits(cfg.n_grid.size() * runs, 0);
  ParallelFor(hits.size(), options.threads, [&](std::size_t i) {
    const std::uint64_t n = cfg.n_grid[i / runs];
    const std::uint64_t run = i % runs;
    RandomStream rng =
        DeriveStream(cfg.seed, StreamPurpose::kPacValidation, {n, run});
    const std::vector<std::size_t> records = SampleRecords(pop.dist, n, rng);
    const auto count = std::count(records.begin(), records.end(),
                                  result.designated_category);
    const double freq = static_cast<double>(count) / static_cast<double>(n);
    hits[i] = freq >= cfg.alpha ? 1 : 0;
  });

  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const auto first = hits.begin() + static_cast<std::ptrdiff_t>(g * runs);
    const auto hit_count =
        std::count(first, first + static_cast<std::ptrdiff_t>(runs), 1);
    const PacBounds bounds =
        ComputePacBounds(cfg.n_grid[g], cfg.alpha, result.designated_mass);
    result.rows.push_back({cfg.n_grid[g],
                           static_cast<double>(hit_count) /
                               static_cast<double>(runs),
                           bounds.hoeffding_gap, bounds.hoeffding_alpha,
                           bounds.empirical_fit});
  }
  return result;
}

UtilityResult RunUtility(const SimConfig& cfg) {
  const Population pop = MakeDistribution(cfg);
  const RapporParams params = DeriveParams(cfg.p, cfg.k);
  RandomStream sample_rng =
      DeriveStream(cfg.seed, StreamPurpose::kUtility, {kSampleLane});
  RandomStream privatize_rng =
      DeriveStream(cfg.seed, StreamPurpose::kUtility, {kPrivatizeLane});
  const ReleaseBundle bundle = SampleAndRelease(pop, params, cfg.utility_n,
                                                sample_rng, privatize_rng);
  const std::vector<double> truth = NonrareTruth(pop);
  const std::vector<double> est = NonrareEstimates(pop, bundle);
  UtilityResult result;
  result.rows.push_back({cfg.utility_n, KlDivergence(truth, est),
                         TopKAccuracy(truth, est, 5), SpearmanRho(truth, est)});
  return result;
}

}  // namespace aligndp
