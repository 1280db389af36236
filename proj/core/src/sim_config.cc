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

#include "aligndp/sim_config.h"

#include <cmath>

#include "aligndp/text.h"

namespace aligndp {

namespace {

template <typename Parse>
auto ParseField(std::string_view key, std::string_view value, Parse parse) {
  try {
    return parse(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(key), e.what());
  }
}

}  // namespace

void Validate(const SimConfig& cfg) {
  if (cfg.k < 2) throw ConfigError("k", "must be >= 2");
  if (cfg.rare_count < 1) throw ConfigError("rare_count", "must be >= 1");
  if (cfg.rare_count + 2 > cfg.k) {
    throw ConfigError("rare_count",
                      "must leave at least 2 non-rare categories (k - 2)");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("alpha", "must be in (0, 1)");
  }
  if (!(cfg.rare_mass >= 0.0 && cfg.rare_mass < cfg.alpha)) {
    throw ConfigError("rare_mass", "must be in [0, alpha)");
  }
  if (!(static_cast<double>(cfg.rare_count) * cfg.rare_mass < 1.0)) {
    throw ConfigError("rare_mass", "rare_count * rare_mass must be < 1");
  }
  if (!(cfg.p >= 0.0 && cfg.p < 1.0)) {
    throw ConfigError("p", "must be in [0, 1)");
  }
  if (cfg.n_default < 1) throw ConfigError("n_default", "must be >= 1");
  if (cfg.n_grid.empty()) throw ConfigError("n_grid", "must not be empty");
  for (std::uint64_t n : cfg.n_grid) {
    if (n < 1) throw ConfigError("n_grid", "every n must be >= 1");
  }
  if (cfg.runs < 2) throw ConfigError("runs", "must be >= 2");
  if (cfg.pac_runs < 1) throw ConfigError("pac_runs", "must be >= 1");
  if (cfg.query_budgets.empty()) {
    throw ConfigError("query_budgets", "must not be empty");
  }
  for (std::uint64_t q : cfg.query_budgets) {
    if (q < 1) throw ConfigError("query_budgets", "every budget must be >= 1");
  }
  if (cfg.utility_n < 1) throw ConfigError("utility_n", "must be >= 1");
  if (!(std::isfinite(cfg.zipf_exponent) && cfg.zipf_exponent >= 0.0)) {
    throw ConfigError("zipf_exponent", "must be finite and >= 0");
  }
}

const std::vector<std::string_view>& ConfigFieldNames() {
  static const std::vector<std::string_view> kNames = {
      "k",        "rare_count", "rare_mass",     "alpha",
      "p",        "n_default",  "n_grid",        "runs",
      "pac_runs", "query_budgets", "utility_n",  "zipf_exponent",
      "seed"};
  return kNames;
}

void SetField(SimConfig& cfg, std::string_view key, std::string_view value) {
  auto as_u64 = [&](std::string_view v) { return ParseField(key, v, ParseUint64); };
  auto as_double = [&](std::string_view v) { return ParseField(key, v, ParseDouble); };
  auto as_list = [&](std::string_view v) {
    return ParseField(key, v, ParseUint64List);
  };
  if (key == "k") {
    cfg.k = as_u64(value);
  } else if (key == "rare_count") {
    cfg.rare_count = as_u64(value);
  } else if (key == "rare_mass") {
    cfg.rare_mass = as_double(value);
  } else if (key == "alpha") {
    cfg.alpha = as_double(value);
  } else if (key == "p") {
    cfg.p = as_double(value);
  } else if (key == "n_default") {
    cfg.n_default = as_u64(value);
  } else if (key == "n_grid") {
    cfg.n_grid = as_list(value);
  } else if (key == "runs") {
    cfg.runs = as_u64(value);
  } else if (key == "pac_runs") {
    cfg.pac_runs = as_u64(value);
  } else if (key == "query_budgets") {
    cfg.query_budgets = as_list(value);
  } else if (key == "utility_n") {
    cfg.utility_n = as_u64(value);
  } else if (key == "zipf_exponent") {
    cfg.zipf_exponent = as_double(value);
  } else if (key == "seed") {
    cfg.seed = as_u64(value);
  } else {
    throw ConfigError(std::string(key), "unknown configuration key");
  }
}

std::string ToConfigText(const SimConfig& cfg) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append("\n");
  };
  line("k", std::to_string(cfg.k));
  line("rare_count", std::to_string(cfg.rare_count));
  line("rare_mass", FormatDouble(cfg.rare_mass));
  line("alpha", FormatDouble(cfg.alpha));
  line("p", FormatDouble(cfg.p));
  line("n_default", std::to_string(cfg.n_default));
  line("n_grid", FormatUint64List(cfg.n_grid));
  line("runs", std::to_string(cfg.runs));
  line("pac_runs", std::to_string(cfg.pac_runs));
  line("query_budgets", FormatUint64List(cfg.query_budgets));
  line("utility_n", std::to_string(cfg.utility_n));
  line("zipf_exponent", FormatDouble(cfg.zipf_exponent));
  line("seed", std::to_string(cfg.seed));
  return out;
}

void ApplyConfigText(SimConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = Trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no),
                        "expected key=value, got '" + std::string(line) + "'");
    }
    SetField(cfg, Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

}  // namespace aligndp
