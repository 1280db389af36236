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

// Simulation harness: a synthetic single-field population plus the
// frequency-recovery, MSE-decay, extraction, PAC-validation and utility
// experiments. Every experiment is a pure function of its SimConfig; random
// streams are derived per (experiment, grid point, run, lane) from cfg.seed,
// so results do not depend on execution order or thread count.
//
// The population has one categorical field. Independent fields with the
// same distribution behave identically, so one suffices for every
// per-field metric.

#ifndef ALIGNDP_EXPERIMENTS_H_
#define ALIGNDP_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aligndp/mechanism.h"
#include "aligndp/rng.h"
#include "aligndp/sim_config.h"

namespace aligndp {

enum class SchemaId { kFreq, kMse, kMseSummary, kAttack, kPac, kUtility };

struct Population {
  CategoricalDistribution dist;
  RarityPartition partition;
};

// Categories [0, rare_count) get rare_mass each. The remaining
// 1 - rare_count * rare_mass is spread over the other categories in
// proportion to rank^(-zipf_exponent) (rank 1 = category rare_count).
// Throws ConfigError if cfg is invalid.
Population MakeDistribution(const SimConfig& cfg);

// n i.i.d. draws from `dist`.
std::vector<std::size_t> SampleRecords(const CategoricalDistribution& dist,
                                       std::uint64_t n, RandomStream& rng);

struct RunOptions {
  // Worker threads for the per-run loops of the MSE and PAC experiments.
  // Output is identical for every value.
  unsigned threads = 1;
};

struct FreqRow {
  std::size_t category_index = 0;
  double true_freq = 0.0;
  double estimated_freq = 0.0;
  bool is_rare = false;
  bool suppressed = false;
};

struct FreqResult {
  static constexpr SchemaId kSchema = SchemaId::kFreq;
  std::vector<FreqRow> rows;
};

struct MseRow {
  std::uint64_t n = 0;
  std::uint64_t run_index = 0;
  double mse = 0.0;
};

struct MseSummaryRow {
  std::uint64_t n = 0;
  double mean_mse = 0.0;
  double std_mse = 0.0;  // sample standard deviation over runs
};

struct MseResult {
  static constexpr SchemaId kSchema = SchemaId::kMse;
  std::vector<MseRow> rows;
  std::vector<MseSummaryRow> summary;
};

struct AttackRow {
  std::uint64_t queries = 0;
  double rare_mae = 0.0;
  double nonrare_spearman = 0.0;
};

struct AttackResult {
  static constexpr SchemaId kSchema = SchemaId::kAttack;
  std::vector<AttackRow> rows;
};

struct PacRow {
  std::uint64_t n = 0;
  double empirical_delta = 0.0;
  double hoeffding_gap = 0.0;
  double hoeffding_alpha = 0.0;
  double empirical_fit = 0.0;
};

struct PacResult {
  static constexpr SchemaId kSchema = SchemaId::kPac;
  std::size_t designated_category = 0;
  double designated_mass = 0.0;
  std::vector<PacRow> rows;
};

struct UtilityRow {
  std::uint64_t n = 0;
  double kl = 0.0;
  double top5_acc = 0.0;
  double spearman = 0.0;
};

struct UtilityResult {
  static constexpr SchemaId kSchema = SchemaId::kUtility;
  std::vector<UtilityRow> rows;
};

// One release over n_default records with an unlimited ledger. Rare rows
// carry estimated_freq = 0 and suppressed = true.
FreqResult RunFrequencyRecovery(const SimConfig& cfg);

// For each n in n_grid, `runs` independent sample+privatize+aggregate
// repetitions; MSE is taken over non-rare categories against the truth.
MseResult RunMseDecay(const SimConfig& cfg, const RunOptions& options = {});

// One fixed record sample of size n_default. For each budget Q the
// adversary obtains Q releases of those records (fresh randomness each),
// averages the non-rare estimates and is scored by
//   rare_mae:         mean |mu_r - (1 - sum of averaged non-rare
//                     estimates) / |rare||  over rare categories r
//   nonrare_spearman: Spearman rho of averaged estimates vs true masses.
// All Q releases are charged to one ledger per budget.
AttackResult RunExtraction(const SimConfig& cfg);

// For each n in n_grid, the fraction of pac_runs raw samples in which the
// first rare category's empirical frequency reaches alpha, next to the
// three PAC bounds at that category's true mass.
PacResult RunPacValidation(const SimConfig& cfg,
                           const RunOptions& options = {});

// One release at utility_n, scored over non-rare categories: KL(truth ||
// clamped estimate), top-5 overlap and Spearman rho.
UtilityResult RunUtility(const SimConfig& cfg);

}  // namespace aligndp

#endif  // ALIGNDP_EXPERIMENTS_H_
