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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "aligndp/accountant.h"
#include "aligndp/csv.h"
#include "aligndp/experiments.h"
#include "aligndp/mechanism.h"
#include "aligndp/sim_config.h"
#include "aligndp/text.h"

namespace aligndp::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kSeedEnv = "ALIGNDP_SEED";

// A named invalid value; reported with exit code 1.
struct FieldError : std::runtime_error {
  FieldError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message) {}
};

struct BudgetDemoOptions {
  std::string budget = "5";
  std::string mode = "basic";
  std::string eps_per_query = "auto";
  std::string delta = "1e-05";
  std::uint64_t max_queries = 1000;
};

struct Invocation {
  std::string subcommand;
  std::optional<std::string> config_path;
  std::string out_dir = "results";
  bool force = false;
  unsigned threads = 1;
  // SimConfig field name -> raw flag value, for fields given on the command
  // line.
  std::map<std::string, std::string, std::less<>> overrides;
  BudgetDemoOptions budget_demo;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FieldError("config", "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes through a temporary file in the same directory and renames it into
// place.
void WriteAtomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp.replace_filename("." + path.filename().string() + ".tmp");
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    file << contents;
    if (!file.flush()) {
      throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

SimConfig ResolveConfig(const Invocation& inv) {
  SimConfig cfg;
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    SetField(cfg, "seed", env);
  }
  if (inv.config_path) ApplyConfigText(cfg, ReadFile(*inv.config_path));
  for (std::string_view name : ConfigFieldNames()) {
    if (auto it = inv.overrides.find(name); it != inv.overrides.end()) {
      SetField(cfg, name, it->second);
    }
  }
  Validate(cfg);
  return cfg;
}

std::vector<std::string> OutputsFor(std::string_view subcommand) {
  if (subcommand == "freq") return {"freq.csv"};
  if (subcommand == "mse") return {"mse.csv", "mse_summary.csv"};
  if (subcommand == "attack") return {"attack.csv"};
  if (subcommand == "pac") return {"pac.csv"};
  if (subcommand == "utility") return {"utility.csv"};
  if (subcommand == "budget-demo") return {"ledger.txt"};
  return {"freq.csv",   "mse.csv", "mse_summary.csv",
          "attack.csv", "pac.csv", "utility.csv"};
}

std::vector<CsvTable> RunExperiments(std::string_view subcommand,
                                     const SimConfig& cfg,
                                     const RunOptions& options) {
  const bool all = subcommand == "run-all";
  std::vector<CsvTable> tables;
  if (all || subcommand == "freq") tables.push_back(ToCsv(RunFrequencyRecovery(cfg)));
  if (all || subcommand == "mse") {
    for (CsvTable& t : ToCsv(RunMseDecay(cfg, options))) {
      tables.push_back(std::move(t));
    }
  }
  if (all || subcommand == "attack") tables.push_back(ToCsv(RunExtraction(cfg)));
  if (all || subcommand == "pac") {
    tables.push_back(ToCsv(RunPacValidation(cfg, options)));
  }
  if (all || subcommand == "utility") tables.push_back(ToCsv(RunUtility(cfg)));
  return tables;
}

std::string RunBudgetDemo(const BudgetDemoOptions& opts, const SimConfig& cfg,
                          std::ostream& out) {
  auto parse = [](const char* field, const std::string& text) {
    try {
      return ParseDouble(text);
    } catch (const std::invalid_argument& e) {
      throw FieldError(field, e.what());
    }
  };
  const double budget = parse("budget", opts.budget);
  const double delta = parse("delta", opts.delta);
  CompositionMode mode;
  try {
    mode = ParseCompositionMode(opts.mode);
  } catch (const std::invalid_argument& e) {
    throw FieldError("mode", e.what());
  }
  const RapporParams params = DeriveParams(cfg.p, cfg.k);
  const double eps = opts.eps_per_query == "auto"
                         ? params.eps_nominal
                         : parse("eps_per_query", opts.eps_per_query);
  if (!(eps >= 0.0)) throw FieldError("eps_per_query", "must be >= 0");
  if (!(budget >= 0.0)) throw FieldError("budget", "must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw FieldError("delta", "must be in (0, 1)");

  PrivacyLedger ledger(budget, mode, delta);
  out << "# budget-demo budget=" << FormatDouble(budget)
      << " mode=" << ToString(mode) << " delta_target=" << FormatDouble(delta)
      << " eps_per_query=" << FormatDouble(eps)
      << " eps_exact=" << FormatDouble(params.eps_exact) << '\n';
  std::uint64_t accepted = 0;
  for (std::uint64_t query = 1; query <= opts.max_queries; ++query) {
    const ChargeResult result = ledger.Charge(eps);
    if (!result) {
      out << "# query " << query << ": refused: " << result.reason << '\n';
      break;
    }
    ++accepted;
    out << "# query " << query << ": accepted eps=" << FormatDouble(eps)
        << " spent=" << FormatDouble(ledger.spent())
        << " remaining=" << FormatDouble(ledger.remaining()) << '\n';
  }
  out << "# accepted " << accepted << " queries; spent "
      << FormatDouble(ledger.spent()) << " of " << FormatDouble(budget)
      << '\n';
  return ledger.Serialize();
}

int Execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const SimConfig cfg = ResolveConfig(inv);
  out << ToConfigText(cfg);

  const fs::path out_dir(inv.out_dir);
  const std::vector<std::string> outputs = OutputsFor(inv.subcommand);
  for (const std::string& name : outputs) {
    if (fs::exists(out_dir / name) && !inv.force) {
      err << "aligndp: refusing to overwrite " << (out_dir / name).string()
          << " (pass --force)\n";
      return kExitFailure;
    }
  }

  std::vector<std::pair<std::string, std::string>> files;
  if (inv.subcommand == "budget-demo") {
    files.emplace_back("ledger.txt", RunBudgetDemo(inv.budget_demo, cfg, out));
  } else {
    RunOptions options;
    options.threads = inv.threads;
    for (const CsvTable& table : RunExperiments(inv.subcommand, cfg, options)) {
      files.emplace_back(table.file_name, table.ToString());
    }
  }

  fs::create_directories(out_dir);
  for (const auto& [name, contents] : files) {
    WriteAtomically(out_dir / name, contents);
    out << "# wrote " << (out_dir / name).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int ParseAndDispatch(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
  Invocation inv;
  CLI::App app{"Two-tier local privacy mechanism: simulations and budget demo",
               "aligndp"};
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--config", inv.config_path,
                 "key=value config file (overrides defaults and "
                 "ALIGNDP_SEED)");
  app.add_option("--out", inv.out_dir, "Output directory")
      ->capture_default_str();
  app.add_flag("--force", inv.force, "Overwrite existing output files");
  app.add_option("--threads", inv.threads,
                 "Worker threads for mse/pac (output is unaffected)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  for (std::string_view name : ConfigFieldNames()) {
    std::string flag = "--" + std::string(name);
    for (char& c : flag) {
      if (c == '_') c = '-';
    }
    app.add_option_function<std::string>(
        flag,
        [&inv, key = std::string(name)](const std::string& value) {
          inv.overrides[key] = value;
        },
        "Override " + std::string(name));
  }

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"freq", "Frequency recovery (freq.csv)"},
      {"mse", "MSE decay over n_grid (mse.csv, mse_summary.csv)"},
      {"attack", "Extraction resistance vs query budget (attack.csv)"},
      {"pac", "PAC validation (pac.csv)"},
      {"utility", "Utility metrics (utility.csv)"},
      {"budget-demo", "Trace privacy-budget charges until refusal (ledger.txt)"},
      {"run-all", "All experiments (six CSVs)"},
  };
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->callback([&inv, name = std::string(sub.name)] { inv.subcommand = name; });
    if (std::string_view(sub.name) == "budget-demo") {
      BudgetDemoOptions& bd = inv.budget_demo;
      cmd->add_option("--budget", bd.budget, "Budget in nats")
          ->capture_default_str();
      cmd->add_option("--mode", bd.mode, "basic or advanced")
          ->capture_default_str();
      cmd->add_option("--eps-per-query", bd.eps_per_query,
                      "Per-query epsilon, or 'auto' for ln((1-p)/p)")
          ->capture_default_str();
      cmd->add_option("--delta", bd.delta, "delta for advanced composition")
          ->capture_default_str();
      cmd->add_option("--max-queries", bd.max_queries,
                      "Stop after this many attempts")
          ->capture_default_str();
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ConversionError& e) {
    err << "aligndp: invalid value: " << e.what() << '\n';
    return kExitFailure;
  } catch (const CLI::ValidationError& e) {
    err << "aligndp: invalid value: " << e.what() << '\n';
    return kExitFailure;
  } catch (const CLI::ParseError& e) {
    err << "aligndp: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    return Execute(inv, out, err);
  } catch (const ConfigError& e) {
    err << "aligndp: invalid configuration: " << e.what() << '\n';
  } catch (const FieldError& e) {
    err << "aligndp: invalid value: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "aligndp: " << e.what() << '\n';
  }
  return kExitFailure;
}

}  // namespace aligndp::cli
