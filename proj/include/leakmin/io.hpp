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
#ifndef LEAKMIN_IO_HPP_
#define LEAKMIN_IO_HPP_

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "leakmin/designer.hpp"
#include "leakmin/errors.hpp"
#include "leakmin/oracle.hpp"
#include "leakmin/probcore.hpp"

namespace leakmin {

using Json = nlohmann::json;

// Input labels are 1-based in every serialized form.

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline Json label_to_json(const SubsetLabel& s) {
  Json out = Json::array();
  for (std::size_t x : s.members()) out.push_back(x + 1);
  return out;
}

inline Json channel_to_json(const Channel& ch) {
  Json outputs = Json::array();
  for (const auto& l : ch.labels()) outputs.push_back(label_to_json(l));
  Json rows = Json::array();
  for (std::size_t x = 0; x < ch.inputs(); ++x) {
    Json r = Json::array();
    for (std::size_t y = 0; y < ch.outputs(); ++y) r.push_back(ch(x, y));
    rows.push_back(std::move(r));
  }
  return {{"n", ch.inputs()}, {"outputs", outputs}, {"rows", rows}};
}

inline Channel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    throw ValidationError("channel JSON needs a \"rows\" array");
  }
  std::vector<std::vector<double>> rows;
  try {
    rows = j["rows"].get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("channel rows must be arrays of numbers");
  }
  if (rows.empty()) throw ValidationError("channel has no rows");
  if (j.contains("n") && j["n"].get<std::size_t>() != rows.size()) {
    throw ValidationError("channel \"n\" does not match the row count");
  }
  if (!j.contains("outputs")) return Channel::from_rows(rows);
  std::vector<SubsetLabel> labels;
  for (const auto& o : j["outputs"]) {
    std::vector<std::size_t> members;
    for (const auto& v : o) {
      const auto x = v.get<long long>();
      if (x < 1 || static_cast<std::size_t>(x) > rows.size()) {
        throw ValidationError("output label " + std::to_string(x) +
                              " is outside 1.." + std::to_string(rows.size()));
      }
      members.push_back(static_cast<std::size_t>(x - 1));
    }
    labels.emplace_back(std::move(members));
  }
  return Channel::from_rows(rows, std::move(labels));
}

inline std::vector<double> prior_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("prior must be a JSON array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError("prior entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("bad JSON in " + what + ": " + e.what());
  }
}

// "paper-v", "uniform:N", an inline JSON array, or a path to a JSON file.
inline std::vector<double> load_prior_values(const std::string& source) {
  if (source == "paper-v") return Prior::linear_decay(30).original();
  if (source.rfind("uniform:", 0) == 0) {
    std::size_t n = 0;
    try {
      n = std::stoul(source.substr(8));
    } catch (const std::exception&) {
      throw ValidationError("bad uniform size in " + source);
    }
    return Prior::uniform(n).original();
  }
  const auto first = source.find_first_not_of(" \t\n");
  if (first != std::string::npos && source[first] == '[') {
    return prior_from_json(parse_json(source, "--prior"));
  }
  return prior_from_json(parse_json(read_file(source), source));
}

inline Json design_to_json(const DesignResult& r) {
  Json weights = Json::object();
  for (const auto& [s, v] : r.weights) {
    std::vector<std::size_t> mapped;
    for (std::size_t x : s.members()) mapped.push_back(r.permutation[x]);
    weights[SubsetLabel(std::move(mapped)).to_string()] = v;
  }
  Json perm = Json::array();
  for (std::size_t l : r.permutation) perm.push_back(l + 1);
  return {{"jstar", r.jstar},
          {"pi", r.pi},
          {"weights", weights},
          {"channel", channel_to_json(r.channel_in_original_labels())},
          {"permutation", perm}};
}

inline Json report_to_json(const VerificationReport& r) {
  Json lines = Json::array();
  for (const auto& l : r.lines) {
    lines.push_back({{"name", l.name},
                     {"achieved", l.achieved},
                     {"bound", l.bound},
                     {"violation", l.violation}});
  }
  return {{"instance", r.instance},
          {"pass", r.pass},
          {"tolerance", r.tolerance},
          {"max_violation", r.max_violation},
          {"lines", lines}};
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += r[i];
      }
      out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out;
  }

  Json json() const {
    Json out = Json::array();
    for (const auto& r : rows_) {
      Json o = Json::object();
      for (std::size_t i = 0; i < r.size() && i < header_.size(); ++i) {
        o[header_[i]] = cell_json(r[i]);
      }
      out.push_back(std::move(o));
    }
    return out;
  }

 private:
  static Json cell_json(const std::string& cell) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (!cell.empty() && end == cell.c_str() + cell.size()) return v;
    return cell;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace leakmin

#endif  // LEAKMIN_IO_HPP_
