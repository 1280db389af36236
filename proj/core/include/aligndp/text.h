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

// Locale-independent number formatting and parsing shared by the ledger,
// config and CSV writers.

#ifndef ALIGNDP_TEXT_H_
#define ALIGNDP_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aligndp {

// Shortest decimal string that parses back to exactly `value`.
// Infinities print as "inf" / "-inf".
std::string FormatDouble(double value);

// Throw std::invalid_argument unless the whole of `text` (surrounding
// whitespace ignored) is a valid number.
double ParseDouble(std::string_view text);
std::uint64_t ParseUint64(std::string_view text);

// "200,400, 600" -> {200, 400, 600}. Empty items are rejected.
std::vector<std::uint64_t> ParseUint64List(std::string_view text);
std::string FormatUint64List(const std::vector<std::uint64_t>& values);

std::string_view Trim(std::string_view text);

}  // namespace aligndp

#endif  // ALIGNDP_TEXT_H_
