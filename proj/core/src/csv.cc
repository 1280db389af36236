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

#include "aligndp/csv.h"

#include <stdexcept>

#include "aligndp/text.h"

namespace aligndp {

namespace {

std::string Bool(bool value) { return value ? "true" : "false"; }

CsvTable Empty(SchemaId schema) {
  return CsvTable{std::string(SchemaFileName(schema)), SchemaHeader(schema),
                  {}};
}

std::vector<std::string> SplitLine(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string CsvTable::ToString() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

const std::vector<std::string>& SchemaHeader(SchemaId schema) {
  static const std::vector<std::string> kFreq = {
      "category_index", "true_freq", "estimated_freq", "is_rare", "suppressed"};
  static const std::vector<std::string> kMse = {"n", "run_index", "mse"};
  static const std::vector<std::string> kMseSummary = {"n", "mean_mse",
                                                       "std_mse"};
  static const std::vector<std::string> kAttack = {"queries", "rare_mae",
                                                   "nonrare_spearman"};
  static const std::vector<std::string> kPac = {
      "n", "empirical_delta", "hoeffding_gap", "hoeffding_alpha",
      "empirical_fit"};
  static const std::vector<std::string> kUtility = {"n", "kl", "top5_acc",
                                                    "spearman"};
  switch (schema) {
    case SchemaId::kFreq: return kFreq;
    case SchemaId::kMse: return kMse;
    case SchemaId::kMseSummary: return kMseSummary;
    case SchemaId::kAttack: return kAttack;
    case SchemaId::kPac: return kPac;
    case SchemaId::kUtility: return kUtility;
  }
  throw std::logic_error("SchemaHeader: unknown schema");
}

std::string_view SchemaFileName(SchemaId schema) {
  switch (schema) {
    case SchemaId::kFreq: return "freq.csv";
    case SchemaId::kMse: return "mse.csv";
    case SchemaId::kMseSummary: return "mse_summary.csv";
    case SchemaId::kAttack: return "attack.csv";
    case SchemaId::kPac: return "pac.csv";
    case SchemaId::kUtility: return "utility.csv";
  }
  throw std::logic_error("SchemaFileName: unknown schema");
}

CsvTable ToCsv(const FreqResult& result) {
  CsvTable table = Empty(SchemaId::kFreq);
  for (const FreqRow& r : result.rows) {
    table.rows.push_back({std::to_string(r.category_index),
                          FormatDouble(r.true_freq),
                          FormatDouble(r.estimated_freq), Bool(r.is_rare),
                          Bool(r.suppressed)});
  }
  return table;
}

std::vector<CsvTable> ToCsv(const MseResult& result) {
  CsvTable runs = Empty(SchemaId::kMse);
  for (const MseRow& r : result.rows) {
    runs.rows.push_back({std::to_string(r.n), std::to_string(r.run_index),
                         FormatDouble(r.mse)});
  }
  CsvTable summary = Empty(SchemaId::kMseSummary);
  for (const MseSummaryRow& r : result.summary) {
    summary.rows.push_back({std::to_string(r.n), FormatDouble(r.mean_mse),
                            FormatDouble(r.std_mse)});
  }
  return {std::move(runs), std::move(summary)};
}

CsvTable ToCsv(const AttackResult& result) {
  CsvTable table = Empty(SchemaId::kAttack);
  for (const AttackRow& r : result.rows) {
    table.rows.push_back({std::to_string(r.queries), FormatDouble(r.rare_mae),
                          FormatDouble(r.nonrare_spearman)});
  }
  return table;
}

CsvTable ToCsv(const PacResult& result) {
  CsvTable table = Empty(SchemaId::kPac);
  for (const PacRow& r : result.rows) {
    table.rows.push_back({std::to_string(r.n), FormatDouble(r.empirical_delta),
                          FormatDouble(r.hoeffding_gap),
                          FormatDouble(r.hoeffding_alpha),
                          FormatDouble(r.empirical_fit)});
  }
  return table;
}

CsvTable ToCsv(const UtilityResult& result) {
  CsvTable table = Empty(SchemaId::kUtility);
  for (const UtilityRow& r : result.rows) {
    table.rows.push_back({std::to_string(r.n), FormatDouble(r.kl),
                          FormatDouble(r.top5_acc), FormatDouble(r.spearman)});
  }
  return table;
}

CsvTable ParseCsv(std::string_view text) {
  CsvTable table;
  bool first = true;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitLine(line);
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw std::invalid_argument("ParseCsv: row has " +
                                  std::to_string(fields.size()) +
                                  " fields, header has " +
                                  std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (first) throw std::invalid_argument("ParseCsv: empty document");
  return table;
}

}  // namespace aligndp
