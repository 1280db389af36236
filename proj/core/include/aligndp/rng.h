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

#ifndef ALIGNDP_RNG_H_
#define ALIGNDP_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace aligndp {

using RandomStream = std::mt19937_64;

// Identifies which experiment (or other consumer) a derived stream feeds.
// Values are part of the reproducibility contract; do not renumber.
enum class StreamPurpose : std::uint32_t {
  kFrequencyRecovery = 1,
  kMseDecay = 2,
  kExtraction = 3,
  kPacValidation = 4,
  kUtility = 5,
  kTest = 100,
};

// Counter-based split of a master seed: the returned stream depends only on
// (master_seed, purpose, coordinates), never on how many other streams were
// derived before it. Coordinates typically carry (grid point, run, lane).
RandomStream DeriveStream(std::uint64_t master_seed, StreamPurpose purpose,
                          std::initializer_list<std::uint64_t> coordinates);

}  // namespace aligndp

#endif  // ALIGNDP_RNG_H_
