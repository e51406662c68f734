// Copyright 2026 The leakmin Authors
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
//
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "leakmin/commands.hpp"

namespace {

using leakmin::ExperimentConfig;

void add_common(CLI::App* sub, ExperimentConfig& cfg, std::string& k_range,
                std::string& out, std::string& format) {
  sub->add_option("--prior", cfg.prior_source,
                  "JSON array, JSON file, paper-v, or uniform:N");
  sub->add_option("--k", cfg.k, "pre-image size cap");
  sub->add_option("--k-range", k_range, "LO-HI");
  sub->add_option("--measures", cfg.measures,
                  "e.g. shannon min-entropy guesswork renyi-arimoto:2")
      ->delimiter(',');
  sub->add_option("--seed", cfg.seed);
  sub->add_option("--out", out, "write to file instead of stdout");
  sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag_callback("--bits", [&cfg] { cfg.units = leakmin::Units::kBits; },
                         "report in bits");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leakmin: minimum-leakage channel design under a pre-image cap"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string k_range;
  std::string out;
  std::string format;

  std::map<std::string, CLI::App*> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"design", "optimal channel for one prior and cap"},
      {"leakage-curve", "minimum leakage per measure over a k range"},
      {"baseline-compare", "optimal vs uniform k-subset baseline"},
      {"adversary-compare", "informed vs ignorant adversary"},
      {"verify", "check a channel against the lower bound"},
      {"counterexample", "maximizers of the two-output counterexample"}};
  for (const auto& [name, help] : commands) {
    subs[name] = app.add_subcommand(name, help);
    add_common(subs[name], cfg, k_range, out, format);
  }
  subs["design"]->add_option("--gains", cfg.gains_source,
                             "diagonal gains, JSON array or file");
  subs["verify"]->add_option("--channel", cfg.channel_path, "channel JSON file");
  subs["verify"]->add_option("--tol", cfg.tolerance, "absolute tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!k_range.empty()) cfg.k_range = leakmin::parse_k_range(k_range);
    const bool design_like = subs["design"]->parsed() || subs["verify"]->parsed();
    if (format.empty()) format = design_like ? "json" : "csv";
    cfg.format = format == "json" ? leakmin::OutputFormat::kJson
                                  : leakmin::OutputFormat::kCsv;

    leakmin::CommandResult r;
    if (subs["design"]->parsed()) r = leakmin::cmd_design(cfg);
    if (subs["leakage-curve"]->parsed()) r = leakmin::cmd_leakage_curve(cfg);
    if (subs["baseline-compare"]->parsed()) r = leakmin::cmd_baseline_compare(cfg);
    if (subs["adversary-compare"]->parsed()) r = leakmin::cmd_adversary_compare(cfg);
    if (subs["verify"]->parsed()) r = leakmin::cmd_verify(cfg);
    if (subs["counterexample"]->parsed()) r = leakmin::cmd_counterexample(cfg);

    if (out.empty()) {
      std::cout << r.text;
    } else {
      std::ofstream f(out);
      if (!f) throw leakmin::ValidationError("cannot write " + out);
      f << r.text;
    }
    return r.exit_code;
  } catch (const leakmin::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const leakmin::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
