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
#ifndef LEAKMIN_COMMANDS_HPP_
#define LEAKMIN_COMMANDS_HPP_

// Subcommand bodies, kept apart from argument parsing so they can be tested.

#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "leakmin/designer.hpp"
#include "leakmin/entropy.hpp"
#include "leakmin/errors.hpp"
#include "leakmin/gain.hpp"
#include "leakmin/io.hpp"
#include "leakmin/oracle.hpp"

namespace leakmin {

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
  std::string prior_source;
  std::optional<std::size_t> k;
  std::optional<std::pair<std::size_t, std::size_t>> k_range;
  std::vector<std::string> measures;
  std::string gains_source;
  std::string channel_path;
  std::uint64_t seed = 1;
  double tolerance = tol::kAnalytical;
  OutputFormat format = OutputFormat::kCsv;
  Units units = Units::kNats;
};

struct CommandResult {
  std::string text;
  int exit_code = 0;
};

inline std::pair<std::size_t, std::size_t> parse_k_range(const std::string& s) {
  const auto dash = s.find_first_of("-:");
  try {
    if (dash == std::string::npos) {
      const std::size_t k = std::stoul(s);
      return {k, k};
    }
    return {std::stoul(s.substr(0, dash)), std::stoul(s.substr(dash + 1))};
  } catch (const std::exception&) {
    throw ValidationError("bad k range '" + s + "', expected LO-HI");
  }
}

inline Prior load_prior(const ExperimentConfig& cfg,
                        const std::string& fallback = "") {
  const std::string& src = cfg.prior_source.empty() ? fallback : cfg.prior_source;
  if (src.empty()) throw ValidationError("--prior is required");
  return Prior::strip_zeros(load_prior_values(src));
}

inline std::size_t single_k(const ExperimentConfig& cfg, const Prior& p) {
  if (!cfg.k) throw ValidationError("--k is required");
  const std::size_t k = *cfg.k;
  if (k < 1 || k > p.original_size()) {
    throw ValidationError("k must be in 1.." + std::to_string(p.original_size()));
  }
  return k;
}

// Caps beyond the number of positive entries behave like k = n.
inline std::size_t effective_k(std::size_t k, const Prior& p) {
  return std::min(k, p.size());
}

inline std::vector<std::size_t> k_values(const ExperimentConfig& cfg,
                                         const Prior& p) {
  std::size_t lo = 1;
  std::size_t hi = p.original_size();
  if (cfg.k_range) {
    std::tie(lo, hi) = *cfg.k_range;
  } else if (cfg.k) {
    lo = hi = *cfg.k;
  }
  if (lo < 1 || hi < lo || hi > p.original_size()) {
    throw ValidationError("k range must satisfy 1 <= lo <= hi <= " +
                          std::to_string(p.original_size()));
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

inline std::vector<EntropyMeasure> load_measures(
    const ExperimentConfig& cfg, const std::vector<std::string>& fallback) {
  const auto& names = cfg.measures.empty() ? fallback : cfg.measures;
  std::vector<EntropyMeasure> out;
  for (const auto& n : names) out.push_back(parse_measure(n, cfg.units));
  return out;
}

// Evaluates cells concurrently and returns results in input order.
template <typename Cell, typename Fn>
auto run_cells(const std::vector<Cell>& cells, Fn fn) {
  using R = decltype(fn(cells.front()));
  std::vector<std::future<R>> futures;
  futures.reserve(cells.size());
  for (const auto& c : cells) {
    futures.push_back(std::async(std::launch::async, [&fn, &c] { return fn(c); }));
  }
  std::vector<R> out;
  out.reserve(cells.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

inline std::string render(const CsvTable& t, OutputFormat f) {
  return f == OutputFormat::kJson ? t.json().dump(2) + "\n" : t.str();
}

inline CommandResult cmd_design(const ExperimentConfig& cfg) {
  const Prior p = load_prior(cfg);
  const std::size_t k = single_k(cfg, p);
  const auto measures =
      load_measures(cfg, {"shannon", "min-entropy", "guesswork"});
  std::optional<GainSpec> gain;
  if (!cfg.gains_source.empty()) {
    gain = GainSpec::diagonal(load_prior_values(cfg.gains_source));
    if (gain->inputs() != p.original_size()) {
      throw ValidationError("gains must have one entry per prior entry");
    }
  }
  const DesignResult r = gain ? design_with_gain(p, k, *gain)
                              : design(p, effective_k(k, p));
  const Channel ch = r.channel_in_original_labels();
  const auto orig = p.original();
  Json leak = Json::object();
  for (const auto& m : measures) {
    leak[describe(m)] = gain ? g_leakage(m, orig, ch, *gain)
                             : leakage(m, orig, ch);
  }
  if (cfg.format == OutputFormat::kCsv) {
    std::vector<std::string> header{"input"};
    for (const auto& l : ch.labels()) header.push_back("{" + l.to_string() + "}");
    CsvTable t(header);
    for (std::size_t x = 0; x < ch.inputs(); ++x) {
      std::vector<std::string> row{std::to_string(x + 1)};
      for (std::size_t y = 0; y < ch.outputs(); ++y) {
        row.push_back(format_number(ch(x, y)));
      }
      t.add(std::move(row));
    }
    return {t.str()};
  }
  Json out = design_to_json(r);
  out["k"] = k;
  out["leakage"] = leak;
  return {out.dump(2) + "\n"};
}

inline CommandResult cmd_leakage_curve(const ExperimentConfig& cfg) {
  const Prior p = load_prior(cfg, "paper-v");
  const auto measures =
      load_measures(cfg, {"shannon", "log-guesswork", "min-entropy"});
  struct Cell {
    std::size_t k;
    std::size_t m;
  };
  std::vector<Cell> cells;
  for (std::size_t k : k_values(cfg, p)) {
    for (std::size_t i = 0; i < measures.size(); ++i) cells.push_back({k, i});
  }
  const auto values = run_cells(cells, [&](const Cell& c) {
    return min_leakage_closed_form(measures[c.m], p, effective_k(c.k, p));
  });
  CsvTable t({"k", "measure", "min_leakage"});
  for (std::size_t i = 0; i < cells.size(); ++i) {
    t.add({std::to_string(cells[i].k), describe(measures[cells[i].m]),
           format_number(values[i])});
  }
  return {render(t, cfg.format)};
}

inline CommandResult cmd_baseline_compare(const ExperimentConfig& cfg) {
  const Prior p = load_prior(cfg, "paper-v");
  const auto ks = k_values(cfg, p);
  const auto values = run_cells(ks, [&](std::size_t k) {
    const std::size_t ke = effective_k(k, p);
    return std::pair{
        min_leakage_closed_form(min_entropy(cfg.units), p, ke),
        baseline_uniform_leakage(p, ke, cfg.units)};
  });
  CsvTable t({"k", "optimal", "baseline"});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    t.add({std::to_string(ks[i]), format_number(values[i].first),
           format_number(values[i].second)});
  }
  return {render(t, cfg.format)};
}

inline CommandResult cmd_adversary_compare(const ExperimentConfig& cfg) {
  const Prior p = load_prior(cfg, "paper-v");
  const auto ks = k_values(cfg, p);
  const auto values = run_cells(ks, [&](std::size_t k) {
    return adversary_comparison(p, effective_k(k, p), cfg.units);
  });
  CsvTable t({"k", "informed", "ignorant"});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    t.add({std::to_string(ks[i]), format_number(values[i].informed_entropy),
           format_number(values[i].ignorant_entropy)});
  }
  return {render(t, cfg.format)};
}

// Exit code 1 when the channel fails the check.
inline CommandResult cmd_verify(const ExperimentConfig& cfg) {
  if (cfg.channel_path.empty()) throw ValidationError("--channel is required");
  const Prior p = load_prior(cfg);
  const std::size_t k = single_k(cfg, p);
  Json j = parse_json(read_file(cfg.channel_path), cfg.channel_path);
  if (j.contains("channel")) j = j["channel"];
  const Channel ch = channel_from_json(j);
  if (ch.inputs() != p.original_size()) {
    throw ValidationError("channel has " + std::to_string(ch.inputs()) +
                          " inputs but prior has " +
                          std::to_string(p.original_size()));
  }
  std::vector<EntropyMeasure> measures;
  if (cfg.measures.empty()) {
    measures = reference_measures(effective_k(k, p));
  } else {
    measures = load_measures(cfg, {});
  }
  if (p.size() != p.original_size()) {
    throw ValidationError("verify needs a prior without zero entries");
  }
  const auto report = verify_channel_optimality(p, ch, k, measures, cfg.tolerance);
  return {report_to_json(report).dump(2) + "\n", report.pass ? 0 : 1};
}

inline CommandResult cmd_counterexample(const ExperimentConfig& cfg) {
  Counterexample inst;
  const bool custom = !cfg.prior_source.empty();
  if (custom) inst.prior = load_prior_values(cfg.prior_source);
  const auto measures = load_measures(
      cfg, {"guesswork", "renyi-arimoto:2", "shannon", "min-entropy"});
  const auto xs = run_cells(measures, [&](const EntropyMeasure& m) {
    return counterexample_optimize(m, inst);
  });
  CsvTable t({"measure", "maximizer", "conditional_entropy", "reference"});
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const std::string name = describe(measures[i]);
    std::string ref = "extension";
    if (!custom) {
      if (name == describe(guesswork())) ref = "0.1518";
      if (name == describe(renyi_arimoto(2.0, cfg.units))) ref = "0.2573";
      if (name == describe(shannon(cfg.units))) ref = "0.2998";
    } else {
      ref = "";
    }
    t.add({name, format_number(xs[i]),
           format_number(inst.conditional_entropy_at(measures[i], xs[i])), ref});
  }
  return {render(t, cfg.format)};
}

}  // namespace leakmin

#endif  // LEAKMIN_COMMANDS_HPP_
