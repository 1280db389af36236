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

// Privacy-budget accounting and release aggregation.
//
// A PrivacyLedger holds a hard budget and the history of per-query epsilons.
// Its spend is always the composition of that history under the ledger's
// mode, recomputed from scratch. Aggregate() charges one query per release
// before touching the reports; a refused charge yields no release.

#ifndef ALIGNDP_ACCOUNTANT_H_
#define ALIGNDP_ACCOUNTANT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aligndp/mechanism.h"

namespace aligndp {

enum class CompositionMode { kBasic, kAdvanced };

std::string_view ToString(CompositionMode mode);
// Accepts "basic" or "advanced". Throws std::invalid_argument otherwise.
CompositionMode ParseCompositionMode(std::string_view text);

// count * eps. Throws std::invalid_argument on negative eps.
double ComposeBasic(std::uint64_t count, double eps);

// sqrt(2 count ln(1/delta)) eps + count eps (e^eps - 1).
// Throws std::invalid_argument unless count >= 1, eps > 0 and
// 0 < delta < 1.
double ComposeAdvanced(std::uint64_t count, double eps, double delta);

// Composition of an arbitrary history. Basic mode sums. Advanced mode uses
// the heterogeneous form sqrt(2 ln(1/delta) sum eps_i^2) +
// sum eps_i (e^eps_i - 1), which equals ComposeAdvanced() when every eps_i
// is equal. An empty history composes to 0 in both modes.
double Compose(std::span<const double> epsilons, CompositionMode mode,
               double delta);

struct ChargeResult {
  bool accepted = false;
  // Spend the ledger would have (accepted) or would have had (refused).
  double prospective_spent = 0.0;
  std::string reason;  // empty when accepted

  explicit operator bool() const { return accepted; }
};

class PrivacyLedger {
 public:
  static constexpr double kDefaultDelta = 1e-5;

  // Throws std::invalid_argument if budget is negative or NaN, or
  // delta_target is outside (0, 1). An infinite budget is allowed.
  PrivacyLedger(double budget, CompositionMode mode,
                double delta_target = kDefaultDelta);

  // Appends `eps` if the composed spend stays within budget. A refusal is a
  // normal outcome and leaves the ledger untouched. Throws
  // std::invalid_argument on negative or NaN eps.
  ChargeResult Charge(double eps);

  // Changing the mode of a ledger that already has history is rejected with
  // std::logic_error; setting the current mode again is a no-op.
  void SetMode(CompositionMode mode);

  double budget() const { return budget_; }
  double spent() const { return spent_; }
  double remaining() const { return budget_ - spent_; }
  double delta_target() const { return delta_target_; }
  CompositionMode mode() const { return mode_; }
  const std::vector<double>& query_epsilons() const { return query_epsilons_; }

  // Composition of query_epsilons() from scratch, independent of spent().
  double Recompute() const;

  // Line-oriented text form:
  //
  //   # aligndp privacy ledger v1
  //   budget=<nats>
  //   mode=basic|advanced
  //   delta_target=<probability>
  //   spent=<nats>          (informational; recomputed on parse)
  //   eps=<nats>            (one line per accepted query, in order)
  //
  // Numbers use the shortest round-trip decimal form.
  std::string Serialize() const;
  // Throws std::invalid_argument on malformed input or on a history that
  // exceeds the stated budget.
  static PrivacyLedger Parse(std::string_view text);

  bool operator==(const PrivacyLedger&) const = default;

 private:
  double budget_;
  CompositionMode mode_;
  double delta_target_;
  std::vector<double> query_epsilons_;
  double spent_ = 0.0;
};

struct LedgerSnapshot {
  double spent = 0.0;
  double budget = 0.0;
  CompositionMode mode = CompositionMode::kBasic;
};

// What the aggregator releases for one batch of reports. Rare categories
// appear only as a pooled count and a PAC bound.
struct ReleaseBundle {
  std::map<std::size_t, double> nonrare_estimates;
  std::uint64_t rare_total_count = 0;
  PacBounds rare_pac;
  // Rare mass the PAC bounds were evaluated at, and whether it came from a
  // known configuration (true) or the alpha / 2 fallback (false).
  // hoeffding_alpha never depends on it.
  double rare_pac_mass = 0.0;
  bool rare_mass_known = false;
  std::uint64_t n = 0;
  RapporParams params_used;
  LedgerSnapshot ledger_snapshot;
};

struct Refusal {
  std::string reason;
};

using AggregateOutcome = std::variant<ReleaseBundle, Refusal>;

// Charges params.eps_nominal to `ledger`; on acceptance debiases the Reported
// histogram over all n = reports.size() reports, drops rare indices from the
// estimates and pools ShieldedRare reports into rare_total_count.
//
// `max_rare_mass`, when known, is the largest true rare mass and feeds the
// PAC bounds; otherwise alpha / 2 is used.
//
// Throws std::invalid_argument on an empty batch, mismatched
// params/partition, a Reported category outside the domain, or a
// max_rare_mass not below alpha. Input errors are detected before the ledger
// is charged.
AggregateOutcome Aggregate(std::span<const PrivatizedReport> reports,
                           const RarityPartition& partition,
                           const RapporParams& params, PrivacyLedger& ledger,
                           std::optional<double> max_rare_mass = std::nullopt);

}  // namespace aligndp

#endif  // ALIGNDP_ACCOUNTANT_H_
