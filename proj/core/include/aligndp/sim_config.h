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

#ifndef ALIGNDP_SIM_CONFIG_H_
#define ALIGNDP_SIM_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aligndp {

inline constexpr std::uint64_t kDefaultSeed = 20251015;

// Simulation parameters. Defaults reproduce the toy setup: 20 categories,
// four rare ones at 0.25% each, alpha = 1%, p = 0.25.
struct SimConfig {
  std::size_t k = 20;
  std::size_t rare_count = 4;
  double rare_mass = 0.0025;
  double alpha = 0.01;
  double p = 0.25;
  std::uint64_t n_default = 1000;
  std::vector<std::uint64_t> n_grid = {200, 400, 600, 800, 1000, 1500, 2000};
  std::uint64_t runs = 50;
  std::uint64_t pac_runs = 2000;
  std::vector<std::uint64_t> query_budgets = {1, 10, 50, 100};
  std::uint64_t utility_n = 10000;
  double zipf_exponent = 1.0;
  std::uint64_t seed = kDefaultSeed;

  bool operator==(const SimConfig&) const = default;
};

// Invalid configuration value; field() is the SimConfig field name.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Throws ConfigError naming the first offending field.
void Validate(const SimConfig& cfg);

// Field names accepted by SetField() and emitted by ToConfigText(), in
// emission order.
const std::vector<std::string_view>& ConfigFieldNames();

// Parses `value` into the field called `key`. Throws ConfigError for an
// unknown key or an unparseable value. Does not run Validate().
void SetField(SimConfig& cfg, std::string_view key, std::string_view value);

// Flat key=value text, one field per line. '#' starts a comment line.
// ToConfigText() output fed to ApplyConfigText() reproduces `cfg` exactly.
std::string ToConfigText(const SimConfig& cfg);
void ApplyConfigText(SimConfig& cfg, std::string_view text);

}  // namespace aligndp

#endif  // ALIGNDP_SIM_CONFIG_H_
