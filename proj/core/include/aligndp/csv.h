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

// CSV emission for experiment results. Output is comma-separated with a
// header row, '.' decimals, shortest round-trip number formatting,
// "true"/"false" booleans and LF line endings, so identical results always
// serialize to identical bytes.

#ifndef ALIGNDP_CSV_H_
#define ALIGNDP_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "aligndp/experiments.h"

namespace aligndp {

struct CsvTable {
  std::string file_name;  // e.g. "freq.csv"
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string ToString() const;
};

const std::vector<std::string>& SchemaHeader(SchemaId schema);
std::string_view SchemaFileName(SchemaId schema);

CsvTable ToCsv(const FreqResult& result);
CsvTable ToCsv(const AttackResult& result);
CsvTable ToCsv(const PacResult& result);
CsvTable ToCsv(const UtilityResult& result);
// mse.csv and mse_summary.csv.
std::vector<CsvTable> ToCsv(const MseResult& result);

// Parses CSV text produced by CsvTable::ToString(). Throws
// std::invalid_argument on ragged rows or an empty document.
CsvTable ParseCsv(std::string_view text);

}  // namespace aligndp

#endif  // ALIGNDP_CSV_H_
