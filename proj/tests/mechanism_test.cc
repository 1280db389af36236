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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.h"

namespace aligndp {
namespace {

std::vector<double> DefaultMasses() {
  std::vector<double> masses(4, 0.0025);
  masses.resize(20, 0.061875);
  return masses;
}

RarityPartition AllNonrare(std::size_t k) {
  return RarityPartition(0.01, std::vector<bool>(k, false));
}

TEST(CategoricalDistributionTest, RejectsInvalidVectors) {
  EXPECT_THROW(CategoricalDistribution({1.0}), std::invalid_argument);
  EXPECT_THROW(CategoricalDistribution({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(CategoricalDistribution({-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(CategoricalDistribution({NAN, 1.0}), std::invalid_argument);
  EXPECT_NO_THROW(CategoricalDistribution({0.5, 0.5 + 5e-10}));
}

TEST(ClassifyRarityTest, DefaultsGiveFourRare) {
  const RarityPartition part =
      ClassifyRarity(CategoricalDistribution(DefaultMasses()), 0.01);
  EXPECT_EQ(part.rare(), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(part.nonrare().size(), 16u);
  EXPECT_TRUE(std::is_sorted(part.nonrare().begin(), part.nonrare().end()));
}

TEST(ClassifyRarityTest, NothingRareAboveThreshold) {
  const RarityPartition part =
      ClassifyRarity(CategoricalDistribution({0.5, 0.5}), 0.01);
  EXPECT_TRUE(part.rare().empty());
  EXPECT_EQ(part.nonrare().size(), 2u);
}

TEST(ClassifyRarityTest, StrictInequalityAtThreshold) {
  const RarityPartition below =
      ClassifyRarity(CategoricalDistribution({0.009, 0.991}), 0.01);
  EXPECT_EQ(below.rare(), (std::vector<std::size_t>{0}));
  // A mass exactly at alpha stays non-rare.
  const RarityPartition at =
      ClassifyRarity(CategoricalDistribution({0.25, 0.75}), 0.25);
  EXPECT_TRUE(at.rare().empty());
}

TEST(ClassifyRarityTest, PartitionCoversDomain) {
  const auto grid = oracle::SimplexGrid(7, 50, 3);
  for (const auto& point : grid) {
    const CategoricalDistribution dist(point);
    const RarityPartition part = ClassifyRarity(dist, 0.1);
    std::vector<std::size_t> all = part.rare();
    all.insert(all.end(), part.nonrare().begin(), part.nonrare().end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(7);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    EXPECT_EQ(all, expected);
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(part.IsRare(j), dist[j] < 0.1);
    }
  }
}

TEST(ClassifyRarityTest, RejectsAlphaOutsideUnitInterval) {
  const CategoricalDistribution dist({0.5, 0.5});
  for (double alpha : {0.0, -0.1, 1.0, 1.5}) {
    try {
      ClassifyRarity(dist, alpha);
      FAIL() << "alpha " << alpha << " accepted";
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
    }
  }
}

TEST(DeriveParamsTest, DefaultSetting) {
  // 50-digit values: q = 0.7625, ln 3, ln 61.
  const RapporParams params = DeriveParams(0.25, 20);
  EXPECT_DOUBLE_EQ(params.q, 0.7625);
  EXPECT_NEAR(params.eps_nominal, 1.0986122886681096914, 1e-15);
  EXPECT_NEAR(params.eps_exact, 4.1108738641733112488, 1e-14);
  EXPECT_NEAR(params.q + 19 * params.off_diagonal(), 1.0, 1e-12);
}

TEST(DeriveParamsTest, BinaryFairCoin) {
  const RapporParams params = DeriveParams(0.5, 2);
  EXPECT_DOUBLE_EQ(params.q, 0.75);
  EXPECT_DOUBLE_EQ(params.eps_nominal, 0.0);
  EXPECT_NEAR(params.eps_exact, 1.0986122886681096914, 1e-15);
}

TEST(DeriveParamsTest, ZeroNoiseIsIdentity) {
  const RapporParams params = DeriveParams(0.0, 5);
  EXPECT_EQ(params.q, 1.0);
  EXPECT_TRUE(std::isinf(params.eps_nominal));
  EXPECT_TRUE(std::isinf(params.eps_exact));
}

TEST(DeriveParamsTest, RejectsInvalidInputs) {
  EXPECT_THROW(DeriveParams(1.0, 20), std::invalid_argument);
  EXPECT_THROW(DeriveParams(-0.1, 20), std::invalid_argument);
  EXPECT_THROW(DeriveParams(0.25, 1), std::invalid_argument);
  EXPECT_THROW(DeriveParams(NAN, 20), std::invalid_argument);
}

TEST(DeriveParamsTest, RowStochasticAndOrderedEpsilons) {
  for (std::size_t k : {2u, 3u, 5u, 20u, 1000u}) {
    for (double p : {0.01, 0.1, 0.25, 0.5, 0.75, 0.99}) {
      const RapporParams params = DeriveParams(p, k);
      EXPECT_NEAR(params.q + static_cast<double>(k - 1) * params.off_diagonal(),
                  1.0, 1e-12);
      EXPECT_GT(params.q, 1.0 / static_cast<double>(k));
      EXPECT_LT(params.q, 1.0);
      EXPECT_GE(params.eps_exact, params.eps_nominal);
    }
  }
}

TEST(TransitionProbabilityTest, MatchesMechanismDescription) {
  const RapporParams params = DeriveParams(0.25, 20);
  for (std::size_t x = 0; x < 20; ++x) {
    double row = 0.0;
    for (std::size_t y = 0; y < 20; ++y) {
      const double prob = TransitionProbability(params, x, y);
      EXPECT_NEAR(prob, oracle::KaryTransition(0.25, 20, x, y), 1e-15);
      row += prob;
    }
    EXPECT_NEAR(row, 1.0, 1e-12);
  }
}

TEST(PrivatizeTest, RareInputIsAlwaysShielded) {
  const RarityPartition part =
      ClassifyRarity(CategoricalDistribution(DefaultMasses()), 0.01);
  const RapporParams params = DeriveParams(0.25, 20);
  RandomStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    for (std::size_t rare : part.rare()) {
      const PrivatizedReport report = Privatize(rare, part, params, rng);
      EXPECT_EQ(report, PrivatizedReport::Shielded());
      EXPECT_FALSE(report.category.has_value());
    }
  }
}

TEST(PrivatizeTest, RareBranchConsumesNoRandomness) {
  // Identical output for every rare input and an untouched stream: the
  // shielded report is a point mass independent of which rare value was held.
  const RarityPartition part =
      ClassifyRarity(CategoricalDistribution(DefaultMasses()), 0.01);
  const RapporParams params = DeriveParams(0.25, 20);
  RandomStream rng(9);
  const RandomStream before = rng;
  for (std::size_t rare : part.rare()) Privatize(rare, part, params, rng);
  EXPECT_EQ(rng, before);
}

TEST(PrivatizeTest, ZeroNoiseReportsTruth) {
  const RapporParams params = DeriveParams(0.0, 20);
  const RarityPartition part = AllNonrare(20);
  RandomStream rng(2);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(Privatize(5, part, params, rng), PrivatizedReport::Reported(5));
  }
}

TEST(PrivatizeTest, KeepProbabilityMatchesQ) {
  // 10^6 draws: sd of the empirical rate is about 4.3e-4.
  const RapporParams params = DeriveParams(0.25, 20);
  const RarityPartition part = AllNonrare(20);
  RandomStream rng = DeriveStream(1, StreamPurpose::kTest, {1});
  constexpr int kDraws = 1'000'000;
  std::vector<int> counts(20, 0);
  for (int i = 0; i < kDraws; ++i) {
    ++counts[*Privatize(5, part, params, rng).category];
  }
  EXPECT_NEAR(counts[5] / static_cast<double>(kDraws), 0.7625, 0.002);
  for (std::size_t y = 0; y < 20; ++y) {
    if (y == 5) continue;
    EXPECT_NEAR(counts[y] / static_cast<double>(kDraws), 0.0125, 0.0006)
        << "output " << y;
  }
}

TEST(PrivatizeTest, RejectsBadInputs) {
  const RapporParams params = DeriveParams(0.25, 20);
  RandomStream rng(3);
  EXPECT_THROW(Privatize(20, AllNonrare(20), params, rng), std::out_of_range);
  EXPECT_THROW(Privatize(0, AllNonrare(19), params, rng),
               std::invalid_argument);
}

TEST(DebiasTest, ZeroNoiseIsIdentity) {
  const RapporParams params = DeriveParams(0.0, 4);
  const std::vector<std::uint64_t> hist = {10, 20, 30, 40};
  const std::vector<double> est = Debias(hist, 100, params);
  EXPECT_DOUBLE_EQ(est[0], 0.1);
  EXPECT_DOUBLE_EQ(est[1], 0.2);
  EXPECT_DOUBLE_EQ(est[2], 0.3);
  EXPECT_DOUBLE_EQ(est[3], 0.4);
}

TEST(DebiasTest, BinaryHandSolved) {
  // E[y_0] = 0.75 mu + 0.25 (1 - mu) = 0.6  =>  mu = 0.7.
  const RapporParams params = DeriveParams(0.5, 2);
  const std::vector<std::uint64_t> hist = {6, 4};
  const std::vector<double> est = Debias(hist, 10, params);
  EXPECT_NEAR(est[0], 0.7, 1e-15);
  EXPECT_NEAR(est[1], 0.3, 1e-15);
}

TEST(DebiasTest, ExactExpectationRoundTrip) {
  const RapporParams params = DeriveParams(0.25, 20);
  std::vector<double> y(20, 0.0);
  y[7] = 0.061875 * 0.7625 + (1 - 0.061875) * 0.0125;
  EXPECT_NEAR(DebiasFrequencies(y, params)[7], 0.061875, 1e-12);
}

TEST(DebiasTest, SumIdentityAndNoClamping) {
  const RapporParams params = DeriveParams(0.25, 5);
  const std::vector<std::uint64_t> hist = {0, 1, 2, 3, 4};
  const std::vector<double> est = Debias(hist, 20, params);
  EXPECT_LT(est[0], 0.0);  // preserved, not clamped
  const double total = std::accumulate(est.begin(), est.end(), 0.0);
  EXPECT_NEAR(total, (10.0 / 20.0 - 0.25) / 0.75, 1e-12);
}

TEST(DebiasTest, RejectsBadInputs) {
  const RapporParams params = DeriveParams(0.25, 3);
  const std::vector<std::uint64_t> hist = {1, 2, 3};
  EXPECT_THROW(Debias(hist, 0, params), std::invalid_argument);
  EXPECT_THROW(Debias(hist, 5, params), std::invalid_argument);
  const std::vector<std::uint64_t> short_hist = {1, 2};
  EXPECT_THROW(Debias(short_hist, 10, params), std::invalid_argument);
}

// Composing the expectation map with the estimator is the identity on the
// simplex, with no sampling involved.
TEST(DebiasTest, AnalyticUnbiasednessOnSimplexGrid) {
  const struct {
    std::size_t k;
    double p;
  } cases[] = {{2, 0.5}, {5, 0.4}, {20, 0.25}, {3, 0.9}};
  for (const auto& c : cases) {
    const RapporParams params = DeriveParams(c.p, c.k);
    for (const auto& mu : oracle::SimplexGrid(c.k, 100, c.k)) {
      const std::vector<double> est =
          DebiasFrequencies(oracle::ExpectedReportFractions(mu, c.p), params);
      for (std::size_t j = 0; j < c.k; ++j) {
        ASSERT_NEAR(est[j], mu[j], 1e-12) << "k=" << c.k << " j=" << j;
      }
    }
  }
}

// mean over 200 trials of mu_hat_j is within 3 standard errors of mu_j.
TEST(DebiasTest, StatisticallyUnbiased) {
  const std::vector<double> mu = {0.1, 0.2, 0.3, 0.15, 0.25};
  const RapporParams params = DeriveParams(0.4, 5);
  const RarityPartition part =
      ClassifyRarity(CategoricalDistribution(mu), 0.01);
  constexpr int kTrials = 200;
  constexpr std::uint64_t kN = 100'000;
  std::vector<std::vector<double>> estimates(5);
  for (int t = 0; t < kTrials; ++t) {
    RandomStream rng = DeriveStream(7, StreamPurpose::kTest,
                                    {static_cast<std::uint64_t>(t)});
    std::discrete_distribution<std::size_t> draw(mu.begin(), mu.end());
    std::vector<std::uint64_t> hist(5, 0);
    for (std::uint64_t i = 0; i < kN; ++i) {
      ++hist[*Privatize(draw(rng), part, params, rng).category];
    }
    const std::vector<double> est = Debias(hist, kN, params);
    for (std::size_t j = 0; j < 5; ++j) estimates[j].push_back(est[j]);
  }
  for (std::size_t j = 0; j < 5; ++j) {
    const auto& e = estimates[j];
    const double mean = std::accumulate(e.begin(), e.end(), 0.0) / kTrials;
    double sq = 0.0;
    for (double v : e) sq += (v - mean) * (v - mean);
    const double sd = std::sqrt(sq / (kTrials - 1));
    EXPECT_LE(std::abs(mean - mu[j]), 3.0 * sd / std::sqrt(kTrials))
        << "category " << j;
  }
}

TEST(EstimatorVarianceBoundTest, ClosedForm) {
  EXPECT_NEAR(EstimatorVarianceBound(DeriveParams(0.25, 20), 1000), 1.875e-4,
              1e-18);
  EXPECT_DOUBLE_EQ(EstimatorVarianceBound(DeriveParams(0.5, 2), 1), 0.25);
  EXPECT_EQ(EstimatorVarianceBound(DeriveParams(0.0, 2), 10), 0.0);
  EXPECT_THROW(EstimatorVarianceBound(DeriveParams(0.5, 2), 0),
               std::invalid_argument);
}

// Var(mu_hat_j) = y_j (1 - y_j) / (n (1 - p)^2) exactly. The quoted bound
// p (1 - p) / n is recorded next to it but is not an upper bound in general:
// a category with mass ~0.29 exceeds it, a light one does not.
TEST(EstimatorVarianceBoundTest, EmpiricalVarianceVersusBound) {
  const std::vector<double> mu = {0.29, 0.02, 0.69};
  const CategoricalDistribution dist(mu);
  const RarityPartition partition = ClassifyRarity(dist, 0.01);
  const RapporParams params = DeriveParams(0.25, 3);
  const auto y = oracle::ExpectedReportFractions(mu, 0.25);
  constexpr std::uint64_t kN = 1000;
  constexpr int kTrials = 4000;
  RandomStream rng = DeriveStream(5, StreamPurpose::kTest, {});
  std::discrete_distribution<std::size_t> draw(mu.begin(), mu.end());
  std::vector<double> sum(3, 0.0), sum_sq(3, 0.0);
  for (int t = 0; t < kTrials; ++t) {
    std::vector<std::uint64_t> histogram(3, 0);
    for (std::uint64_t i = 0; i < kN; ++i) {
      const auto report = Privatize(draw(rng), partition, params, rng);
      ++histogram[*report.category];
    }
    const auto est = Debias(histogram, kN, params);
    for (std::size_t j = 0; j < 3; ++j) {
      sum[j] += est[j];
      sum_sq[j] += est[j] * est[j];
    }
  }
  const double bound = EstimatorVarianceBound(params, kN);
  std::vector<double> analytic(3);
  for (std::size_t j = 0; j < 3; ++j) {
    analytic[j] = y[j] * (1 - y[j]) / (kN * 0.75 * 0.75);
    const double mean = sum[j] / kTrials;
    const double var = (sum_sq[j] - kTrials * mean * mean) / (kTrials - 1);
    // sd of a sample variance is ~ var sqrt(2 / trials) ~ 2.2%
    EXPECT_NEAR(var / analytic[j], 1.0, 0.1) << "category " << j;
  }
  EXPECT_GT(analytic[0], bound);
  EXPECT_LT(analytic[1], bound);
}

TEST(PacBoundsTest, NoSamplesNoPower) {
  const PacBounds b = ComputePacBounds(0, 0.01, 0.0025);
  EXPECT_EQ(b.hoeffding_gap, 1.0);
  EXPECT_EQ(b.hoeffding_alpha, 1.0);
  EXPECT_EQ(b.empirical_fit, 1.0);
}

TEST(PacBoundsTest, ClosedForms) {
  const PacBounds b = ComputePacBounds(1000, 0.01, 0.0025);
  EXPECT_NEAR(b.hoeffding_gap, 0.89359734710851567234, 1e-15);
  EXPECT_NEAR(b.empirical_fit, 5.5308437014783358310e-4, 1e-18);
  EXPECT_NEAR(b.hoeffding_alpha, 0.81873075307798185867, 1e-15);
}

TEST(PacBoundsTest, MonotoneAndInUnitInterval) {
  for (double mu : {0.0, 0.001, 0.0025, 0.009}) {
    PacBounds prev = ComputePacBounds(0, 0.01, mu);
    for (std::uint64_t n = 100; n <= 5000; n += 100) {
      const PacBounds b = ComputePacBounds(n, 0.01, mu);
      EXPECT_LT(b.hoeffding_gap, prev.hoeffding_gap);
      EXPECT_LT(b.hoeffding_alpha, prev.hoeffding_alpha);
      EXPECT_LT(b.empirical_fit, prev.empirical_fit);
      EXPECT_GT(b.hoeffding_gap, 0.0);
      EXPECT_GT(b.empirical_fit, 0.0);
      prev = b;
    }
  }
}

TEST(PacBoundsTest, RejectsNonRareMass) {
  EXPECT_THROW(ComputePacBounds(100, 0.01, 0.01), std::invalid_argument);
  EXPECT_THROW(ComputePacBounds(100, 0.01, 0.5), std::invalid_argument);
  EXPECT_THROW(ComputePacBounds(100, 0.01, -0.001), std::invalid_argument);
  EXPECT_THROW(ComputePacBounds(100, 1.0, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace aligndp
