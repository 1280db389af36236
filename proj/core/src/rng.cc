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

#include "aligndp/rng.h"

#include <vector>

namespace aligndp {

RandomStream DeriveStream(std::uint64_t master_seed, StreamPurpose purpose,
                          std::initializer_list<std::uint64_t> coordinates) {
  std::vector<std::uint32_t> words;
  words.reserve(4 + 2 * coordinates.size());
  auto push64 = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push64(master_seed);
  words.push_back(static_cast<std::uint32_t>(purpose));
  words.push_back(static_cast<std::uint32_t>(coordinates.size()));
  for (std::uint64_t c : coordinates) push64(c);
  std::seed_seq seq(words.begin(), words.end());
  return RandomStream(seq);
}

}  // namespace aligndp
