// Copyright 2026 The PROS Sampling Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Settings shared by the command-line tool. Values come from a flat
// `key = value` file ('#' starts a comment) and from flags; both are applied
// through apply_setting, flags last, so flags override the file.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pros/dataset.hpp"
#include "pros/designs.hpp"
#include "pros/error.hpp"
#include "pros/harness.hpp"
#include "pros/models.hpp"

namespace pros {

struct RunConfig {
  std::string data;
  MissingPolicy missing;
  std::uint64_t seed = 20150101;
  std::optional<std::size_t> replicates;
  Design design = Design::pros_multi;
  std::string model;
  std::vector<ModelConcomitant> concomitants;
  std::size_t set_size = 3;
  std::size_t cycles = 0;  // 0: 54 / H
  std::size_t training_size = 100;
  bool fixed_training = false;
  std::optional<std::vector<double>> alpha;
  std::string out;
  unsigned workers = 0;
  bool independent_covariate = false;
  bool tied = false;
  std::optional<CsvLayout> layout;
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    auto item = trim(s.substr(start, pos - start));
    if (!item.empty()) out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_value(std::string_view key, std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " +
                      std::string(key));
  }
  return v;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " +
                    std::string(key));
}

}  // namespace detail

/// "NAME" or "NAME:C".
inline ModelConcomitant parse_concomitant(std::string_view text) {
  const auto colon = text.rfind(':');
  ModelConcomitant m;
  if (colon != std::string_view::npos) {
    const auto tail = detail::trim(text.substr(colon + 1));
    double c = 0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), c);
    if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
      throw ConfigError("invalid tie divisor in '" + std::string(text) + "'");
    }
    if (!(c >= 1.0)) throw ConfigError("tie divisor must be >= 1 in '" + std::string(text) + "'");
    m.name = std::string(detail::trim(text.substr(0, colon)));
    m.tie = TieStructure{c, true};
  } else {
    m.name = std::string(detail::trim(text));
  }
  if (m.name.empty()) throw ConfigError("empty concomitant name");
  return m;
}

/// "drop", "median" or "const=V".
inline MissingPolicy parse_missing(std::string_view text) {
  if (text == "drop") return MissingPolicy::drop();
  if (text == "median") return MissingPolicy::median();
  if (text.rfind("const=", 0) == 0) {
    return MissingPolicy::impute(detail::parse_value<double>("missing", text.substr(6)));
  }
  throw ConfigError("invalid missing-value policy '" + std::string(text) + "'");
}

/// Applies one setting. Repeated `concomitant` keys accumulate.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_value;
  const std::string k = normalize_name(key);
  if (k == "data") {
    cfg.data = std::string(value);
  } else if (k == "missing") {
    cfg.missing = parse_missing(value);
  } else if (k == "seed") {
    cfg.seed = parse_value<std::uint64_t>(key, value);
  } else if (k == "replicates") {
    cfg.replicates = parse_value<std::size_t>(key, value);
    if (*cfg.replicates < 2) throw ConfigError("replicates must be at least 2");
  } else if (k == "design") {
    cfg.design = parse_design(value);
  } else if (k == "model") {
    cfg.model = std::string(value);
  } else if (k == "concomitant") {
    cfg.concomitants.push_back(parse_concomitant(value));
  } else if (k == "set size") {
    cfg.set_size = parse_value<std::size_t>(key, value);
    if (cfg.set_size < 1) throw ConfigError("set size must be positive");
  } else if (k == "cycles") {
    cfg.cycles = parse_value<std::size_t>(key, value);
  } else if (k == "training size") {
    cfg.training_size = parse_value<std::size_t>(key, value);
  } else if (k == "fixed training") {
    cfg.fixed_training = detail::parse_bool(key, value);
  } else if (k == "alpha") {
    std::vector<double> a;
    for (const auto& item : detail::split_list(value)) {
      a.push_back(parse_value<double>(key, item));
    }
    cfg.alpha = std::move(a);
  } else if (k == "out") {
    cfg.out = std::string(value);
  } else if (k == "workers") {
    cfg.workers = parse_value<unsigned>(key, value);
  } else if (k == "independent covariate") {
    cfg.independent_covariate = detail::parse_bool(key, value);
  } else if (k == "tied") {
    cfg.tied = detail::parse_bool(key, value);
  } else if (k == "format") {
    if (value == "uci") {
      cfg.layout.reset();
    } else if (value == "csv") {
      if (!cfg.layout) cfg.layout = CsvLayout{};
    } else {
      throw ConfigError("invalid format '" + std::string(value) + "'");
    }
  } else if (k == "response column") {
    if (!cfg.layout) cfg.layout = CsvLayout{};
    cfg.layout->response = std::string(value);
  } else if (k == "id column") {
    if (!cfg.layout) cfg.layout = CsvLayout{};
    cfg.layout->id = std::string(value);
  } else if (k == "concomitant columns") {
    if (!cfg.layout) cfg.layout = CsvLayout{};
    cfg.layout->concomitants = detail::split_list(value);
  } else if (k == "ordinal columns") {
    if (!cfg.layout) cfg.layout = CsvLayout{};
    cfg.layout->ordinal = detail::split_list(value);
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

/// Parses `key = value` lines. Errors name the offending line.
inline std::vector<std::pair<std::string, std::string>> parse_config_file(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view v(line);
    if (const auto hash = v.find('#'); hash != std::string_view::npos) {
      v = v.substr(0, hash);
    }
    v = detail::trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    auto key = detail::trim(v.substr(0, eq));
    auto value = detail::trim(v.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(number) + ": empty key");
    }
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

/// Dataset path: the configured value, else $PROS_DATA.
inline std::string resolve_data_path(const RunConfig& cfg) {
  if (!cfg.data.empty()) return cfg.data;
  if (const char* env = std::getenv("PROS_DATA"); env && *env) return env;
  throw ConfigError("no dataset given (use --data PATH or set PROS_DATA)");
}

inline LoadOptions load_options(const RunConfig& cfg, bool with_covariate) {
  LoadOptions o;
  o.missing = cfg.missing;
  if (with_covariate) o.covariate_seed = cfg.seed;
  o.layout = cfg.layout;
  return o;
}

/// The single design configuration described by a RunConfig.
inline DesignConfig design_config(const RunConfig& cfg) {
  const std::size_t h = cfg.set_size;
  const std::size_t n = cfg.cycles != 0 ? cfg.cycles : kStudySampleSize / h;
  if (n == 0) throw ConfigError("set size larger than the default sample size; give --cycles");
  if (cfg.cycles == 0 && kStudySampleSize % h != 0) {
    throw ConfigError("54 is not a multiple of the set size; give --cycles");
  }
  DesignConfig d;
  d.design = cfg.design;
  d.training_size = cfg.training_size;
  d.fixed_training = cfg.fixed_training;
  if (cfg.design == Design::srs) {
    d.set_size = 1;
    d.cycles = h * n;
    d.model.name = "-";
    return d;
  }
  d.set_size = h;
  d.cycles = n;
  if (!cfg.concomitants.empty()) {
    std::string name;
    for (const auto& c : cfg.concomitants) {
      if (!name.empty()) name += '+';
      name += c.name;
    }
    d.model = RankingModel{name, cfg.concomitants, std::nullopt};
  } else if (!cfg.model.empty()) {
    d.model = builtin_model(cfg.model);
  } else {
    throw ConfigError("design '" + std::string(design_name(cfg.design)) +
                      "' needs --model or --concomitant");
  }
  d.model.explicit_alpha = cfg.alpha;
  return d;
}

}  // namespace pros
