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

#include "aligndp/accountant.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "aligndp/text.h"

namespace aligndp {

namespace {

constexpr std::string_view kLedgerMagic = "# aligndp privacy ledger v1";

void CheckDelta(double delta, const char* where) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(std::string(where) +
                                ": delta must be in (0, 1), got " +
                                FormatDouble(delta));
  }
}

}  // namespace

std::string_view ToString(CompositionMode mode) {
  return mode == CompositionMode::kBasic ? "basic" : "advanced";
}

CompositionMode ParseCompositionMode(std::string_view text) {
  const std::string_view t = Trim(text);
  if (t == "basic") return CompositionMode::kBasic;
  if (t == "advanced") return CompositionMode::kAdvanced;
  throw std::invalid_argument("unknown composition mode '" + std::string(text) +
                              "' (expected basic or advanced)");
}

double ComposeBasic(std::uint64_t count, double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("ComposeBasic: eps must be >= 0, got " +
                                FormatDouble(eps));
  }
  if (count == 0) return 0.0;
  return static_cast<double>(count) * eps;
}

double ComposeAdvanced(std::uint64_t count, double eps, double delta) {
  if (count < 1) {
    throw std::invalid_argument("ComposeAdvanced: need at least one query");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("ComposeAdvanced: eps must be > 0, got " +
                                FormatDouble(eps));
  }
  CheckDelta(delta, "ComposeAdvanced");
  const double k = static_cast<double>(count);
  return std::sqrt(2.0 * k * std::log(1.0 / delta)) * eps +
         k * eps * std::expm1(eps);
}

double Compose(std::span<const double> epsilons, CompositionMode mode,
               double delta) {
  if (mode == CompositionMode::kBasic) {
    double total = 0.0;
    for (double eps : epsilons) total += eps;
    return total;
  }
  CheckDelta(delta, "Compose");
  if (epsilons.empty()) return 0.0;
  double sum_sq = 0.0;
  double drift = 0.0;
  for (double eps : epsilons) {
    sum_sq += eps * eps;
    drift += eps * std::expm1(eps);
  }
  return std::sqrt(2.0 * std::log(1.0 / delta) * sum_sq) + drift;
}

PrivacyLedger::PrivacyLedger(double budget, CompositionMode mode,
                             double delta_target)
    : budget_(budget), mode_(mode), delta_target_(delta_target) {
  if (!(budget >= 0.0)) {
    throw std::invalid_argument("PrivacyLedger: budget must be >= 0, got " +
                                FormatDouble(budget));
  }
  CheckDelta(delta_target, "PrivacyLedger");
}

ChargeResult PrivacyLedger::Charge(double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("PrivacyLedger::Charge: eps must be >= 0, got " +
                                FormatDouble(eps));
  }
  std::vector<double> history = query_epsilons_;
  history.push_back(eps);
  ChargeResult result;
  result.prospective_spent = Compose(history, mode_, delta_target_);
  if (!(result.prospective_spent <= budget_)) {
    result.reason = "composed spend " + FormatDouble(result.prospective_spent) +
                    " would exceed budget " + FormatDouble(budget_) + " (" +
                    std::string(ToString(mode_)) + " composition, " +
                    std::to_string(history.size()) + " queries)";
    return result;
  }
  query_epsilons_ = std::move(history);
  spent_ = result.prospective_spent;
  result.accepted = true;
  return result;
}

void PrivacyLedger::SetMode(CompositionMode mode) {
  if (mode == mode_) return;
  if (!query_epsilons_.empty()) {
    throw std::logic_error(
        "PrivacyLedger::SetMode: cannot switch composition mode after " +
        std::to_string(query_epsilons_.size()) + " charged queries");
  }
  mode_ = mode;
}

double PrivacyLedger::Recompute() const {
  return Compose(query_epsilons_, mode_, delta_target_);
}

std::string PrivacyLedger::Serialize() const {
  std::string out;
  out += kLedgerMagic;
  out += '\n';
  out += "budget=" + FormatDouble(budget_) + '\n';
  out += "mode=" + std::string(ToString(mode_)) + '\n';
  out += "delta_target=" + FormatDouble(delta_target_) + '\n';
  out += "spent=" + FormatDouble(spent_) + '\n';
  for (double eps : query_epsilons_) out += "eps=" + FormatDouble(eps) + '\n';
  return out;
}

PrivacyLedger PrivacyLedger::Parse(std::string_view text) {
  std::optional<double> budget;
  std::optional<CompositionMode> mode;
  std::optional<double> delta;
  std::vector<double> history;
  bool saw_magic = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = Trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == kLedgerMagic) saw_magic = true;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("PrivacyLedger::Parse: line " +
                                  std::to_string(line_no) + " is not key=value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = line.substr(eq + 1);
    if (key == "budget") {
      budget = ParseDouble(value);
    } else if (key == "mode") {
      mode = ParseCompositionMode(value);
    } else if (key == "delta_target") {
      delta = ParseDouble(value);
    } else if (key == "spent") {
      // Derived; recomputed below.
    } else if (key == "eps") {
      history.push_back(ParseDouble(value));
    } else {
      throw std::invalid_argument("PrivacyLedger::Parse: unknown key '" +
                                  std::string(key) + "'");
    }
  }
  if (!saw_magic || !budget || !mode || !delta) {
    throw std::invalid_argument(
        "PrivacyLedger::Parse: missing header (magic, budget, mode or "
        "delta_target)");
  }
  PrivacyLedger ledger(*budget, *mode, *delta);
  for (double eps : history) {
    if (!ledger.Charge(eps)) {
      throw std::invalid_argument(
          "PrivacyLedger::Parse: recorded history exceeds the budget");
    }
  }
  return ledger;
}

AggregateOutcome Aggregate(std::span<const PrivatizedReport> reports,
                           const RarityPartition& partition,
                           const RapporParams& params, PrivacyLedger& ledger,
                           std::optional<double> max_rare_mass) {
  if (reports.empty()) {
    throw std::invalid_argument("Aggregate: empty report batch");
  }
  if (params.k != partition.domain_size()) {
    throw std::invalid_argument("Aggregate: params.k = " +
                                std::to_string(params.k) +
                                " but partition covers " +
                                std::to_string(partition.domain_size()));
  }
  if (max_rare_mass && !(*max_rare_mass >= 0.0 &&
                         *max_rare_mass < partition.alpha())) {
    throw std::invalid_argument("Aggregate: max_rare_mass " +
                                FormatDouble(*max_rare_mass) +
                                " is not in [0, alpha)");
  }
  std::vector<std::uint64_t> histogram(params.k, 0);
  std::uint64_t shielded = 0;
  for (const PrivatizedReport& report : reports) {
    if (report.kind == ReportKind::kShieldedRare) {
      ++shielded;
      continue;
    }
    if (!report.category || *report.category >= params.k) {
      throw std::invalid_argument(
          "Aggregate: reported category missing or outside the domain");
    }
    ++histogram[*report.category];
  }

  const ChargeResult charge = ledger.Charge(params.eps_nominal);
  if (!charge) return Refusal{charge.reason};

  ReleaseBundle bundle;
  bundle.n = reports.size();
  bundle.params_used = params;
  const std::vector<double> estimates = Debias(histogram, bundle.n, params);
  for (std::size_t j : partition.nonrare()) {
    bundle.nonrare_estimates.emplace(j, estimates[j]);
  }
  bundle.rare_total_count = shielded;
  bundle.rare_mass_known = max_rare_mass.has_value();
  bundle.rare_pac_mass = max_rare_mass.value_or(partition.alpha() / 2.0);
  bundle.rare_pac =
      ComputePacBounds(bundle.n, partition.alpha(), bundle.rare_pac_mass);
  bundle.ledger_snapshot = {ledger.spent(), ledger.budget(), ledger.mode()};
  return bundle;
}

}  // namespace aligndp
