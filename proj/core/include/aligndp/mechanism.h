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

// Two-tier local privatization of a single categorical field.
//
// Categories whose population mass is below a rarity threshold alpha are
// shielded: a user holding one of them emits a ShieldedRare sentinel that
// carries no category information. All other categories go through symmetric
// k-ary randomized response: with probability 1 - p the true category is
// reported, otherwise a category drawn uniformly from all k is reported. The
// probability of reporting the true category is therefore
//
//   q = 1 - p + p / k
//
// and any other specific category is reported with probability p / k.
//
// Everything here is pure given its inputs. Privatize() draws only from the
// caller's RandomStream, so concurrent callers need independent streams.

#ifndef ALIGNDP_MECHANISM_H_
#define ALIGNDP_MECHANISM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aligndp/rng.h"

namespace aligndp {

// Absolute tolerance on the sum of a CategoricalDistribution's masses.
inline constexpr double kSimplexTolerance = 1e-9;

// A probability vector over k >= 2 categories.
class CategoricalDistribution {
 public:
  // Throws std::invalid_argument if fewer than two masses are given, any mass
  // lies outside [0, 1], or the masses do not sum to 1 within
  // kSimplexTolerance.
  explicit CategoricalDistribution(std::vector<double> masses);

  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t category) const { return masses_[category]; }
  std::span<const double> masses() const { return masses_; }

 private:
  std::vector<double> masses_;
};

// Rare/non-rare split of {0, ..., k-1}. Index j is rare iff mass(j) < alpha.
// Both index lists are ascending.
class RarityPartition {
 public:
  RarityPartition(double alpha, std::vector<bool> is_rare);

  double alpha() const { return alpha_; }
  std::size_t domain_size() const { return is_rare_.size(); }
  const std::vector<std::size_t>& rare() const { return rare_; }
  const std::vector<std::size_t>& nonrare() const { return nonrare_; }
  bool IsRare(std::size_t category) const { return is_rare_.at(category); }

 private:
  double alpha_;
  std::vector<bool> is_rare_;
  std::vector<std::size_t> rare_;
  std::vector<std::size_t> nonrare_;
};

// Randomized-response parameters and their derived constants.
struct RapporParams {
  double p = 0.0;      // resampling ("flip") probability
  std::size_t k = 0;   // domain size
  double q = 0.0;      // probability of reporting the true category
  // ln((1 - p) / p): the per-bit constant charged by the accountant.
  double eps_nominal = 0.0;
  // ln(q / (p / k)): the largest likelihood ratio the k-ary mechanism
  // actually produces. Always >= eps_nominal.
  double eps_exact = 0.0;

  // Probability of reporting one specific category other than the truth.
  double off_diagonal() const { return p / static_cast<double>(k); }
};

enum class ReportKind { kShieldedRare, kReported };

// One user's privatized output.
struct PrivatizedReport {
  ReportKind kind = ReportKind::kShieldedRare;
  std::optional<std::size_t> category;  // present iff kind == kReported

  static PrivatizedReport Shielded() { return {}; }
  static PrivatizedReport Reported(std::size_t category) {
    return {ReportKind::kReported, category};
  }

  bool operator==(const PrivatizedReport&) const = default;
};

// Three readings of the probability that n samples distinguish a rare event
// of mass mu below threshold alpha.
struct PacBounds {
  double hoeffding_gap = 1.0;    // exp(-2 n (alpha - mu)^2)
  double hoeffding_alpha = 1.0;  // exp(-2 n alpha^2), needs no mu
  double empirical_fit = 1.0;    // exp(-n (alpha - mu))
};

// Partitions the categories of `dist` at threshold `alpha` (strict: a mass
// equal to alpha is non-rare). Throws std::invalid_argument unless
// 0 < alpha < 1.
RarityPartition ClassifyRarity(const CategoricalDistribution& dist,
                               double alpha);

// Throws std::invalid_argument unless 0 <= p < 1 and k >= 2. p == 0 is the
// noiseless identity mechanism; both epsilons are +infinity there.
RapporParams DeriveParams(double p, std::size_t k);

// Exact P(report = `output` | true category = `input`) for a non-rare input.
double TransitionProbability(const RapporParams& params, std::size_t input,
                             std::size_t output);

// Privatizes one user's category. Throws std::out_of_range if
// `true_category` is outside the domain, std::invalid_argument if params.k
// and the partition disagree on the domain size.
PrivatizedReport Privatize(std::size_t true_category,
                           const RarityPartition& partition,
                           const RapporParams& params, RandomStream& rng);

// Privatize() over a batch, drawing sequentially from `rng`.
std::vector<PrivatizedReport> PrivatizeAll(
    std::span<const std::size_t> true_categories,
    const RarityPartition& partition, const RapporParams& params,
    RandomStream& rng);

// Inverts the expectation E[y_j] = mu_j q + (1 - mu_j) p / k, with
// y_j = histogram[j] / n:
//
//   mu_hat_j = (y_j - p / k) / (1 - p)
//
// `n` is the total report count including shielded reports, so the histogram
// may sum to less than n. Entries may come out slightly negative and are not
// clamped. Throws std::invalid_argument on n == 0, a histogram whose length
// differs from params.k, or a histogram summing to more than n.
//
// The frequently quoted form (y_j - (1 - q) / k) / (q - (1 - q) / k) uses an
// off-diagonal term that differs from p / k and is biased for this mechanism;
// it is not used.
std::vector<double> Debias(std::span<const std::uint64_t> histogram,
                           std::uint64_t n, const RapporParams& params);

// Same estimator applied to report fractions y_j directly (no rounding to
// counts). Throws std::invalid_argument if the length differs from params.k.
std::vector<double> DebiasFrequencies(std::span<const double> report_fractions,
                                      const RapporParams& params);

// p (1 - p) / n. Throws std::invalid_argument on n == 0.
double EstimatorVarianceBound(const RapporParams& params, std::uint64_t n);

// Throws std::invalid_argument unless 0 <= mu < alpha < 1; a mass at or above
// the threshold is not shielded and has no PAC guarantee.
PacBounds ComputePacBounds(std::uint64_t n, double alpha, double mu);

}  // namespace aligndp

#endif  // ALIGNDP_MECHANISM_H_
