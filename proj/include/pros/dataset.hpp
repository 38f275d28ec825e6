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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pros/error.hpp"
#include "pros/random.hpp"

namespace pros {

/// Column names of the UCI breast-cancer-wisconsin.data file, in file order.
namespace wbcd {
inline constexpr std::string_view kSubjectId = "Subject ID";
inline constexpr std::string_view kClumpThickness = "Clump Thickness";
inline constexpr std::string_view kCellSize = "Uniformity of Cell Size";
inline constexpr std::string_view kCellShape = "Uniformity of Cell Shape";
inline constexpr std::string_view kMarginalAdhesion = "Marginal Adhesion";
inline constexpr std::string_view kEpithelialSize =
    "Single Epithelial Cell Size";
inline constexpr std::string_view kBareNuclei = "Bare Nuclei";
inline constexpr std::string_view kBlandChromatin = "Bland Chromatin";
inline constexpr std::string_view kNormalNucleoli = "Normal Nucleoli";
inline constexpr std::string_view kMitoses = "Mitoses";
inline constexpr std::string_view kIndependentCovariate =
    "Independent Covariate";
inline constexpr std::string_view kResponse = "Malignant Tumours";

inline constexpr std::string_view kCytological[] = {
    kClumpThickness, kCellSize,       kCellShape,      kMarginalAdhesion,
    kEpithelialSize, kBareNuclei,     kBlandChromatin, kNormalNucleoli,
    kMitoses};
}  // namespace wbcd

/// Case-insensitive name key: lower case, '_' and '-' read as spaces, runs
/// of whitespace collapsed. "bare_nuclei" and "Bare  Nuclei" compare equal.
inline std::string normalize_name(std::string_view name) {
  std::string out;
  bool pending_space = false;
  for (char ch : name) {
    if (ch == '_' || ch == '-' || std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

enum class MissingMode { drop_rows, impute_constant, impute_median };

struct MissingPolicy {
  MissingMode mode = MissingMode::impute_median;
  double constant = 1.0;

  static MissingPolicy drop() { return {MissingMode::drop_rows, 1.0}; }
  static MissingPolicy median() { return {MissingMode::impute_median, 1.0}; }
  static MissingPolicy impute(double v) {
    if (!(v >= 1.0 && v <= 10.0)) {
      throw ConfigError("imputation constant must lie in [1, 10]");
    }
    return {MissingMode::impute_constant, v};
  }
};

struct Record {
  std::int64_t id = 0;
  int response = 0;
  std::map<std::string, double> concomitants;
};

/// The finite population: binary response plus numeric concomitant columns.
/// Stored column-major and immutable once built.
class Population {
 public:
  struct Column {
    std::string name;
    std::vector<double> values;
    bool ordinal = false;  // values restricted to the 1..10 scale
  };

  Population(std::string response_name, std::vector<std::int64_t> ids,
             std::vector<std::uint8_t> responses, std::vector<Column> columns)
      : response_name_(std::move(response_name)),
        ids_(std::move(ids)),
        responses_(std::move(responses)),
        columns_(std::move(columns)) {
    if (responses_.size() < 2) {
      throw DataError("population needs at least 2 records");
    }
    if (ids_.size() != responses_.size()) {
      throw DataError("id column length mismatch");
    }
    for (auto r : responses_) {
      if (r > 1) throw DataError("response must be 0 or 1");
    }
    for (const auto& c : columns_) {
      if (c.values.size() != responses_.size()) {
        throw DataError("column '" + c.name + "' length mismatch");
      }
      for (double v : c.values) {
        if (!std::isfinite(v)) {
          throw DataError("column '" + c.name + "' has a missing value");
        }
        if (c.ordinal && (v < 1.0 || v > 10.0)) {
          throw DataError("column '" + c.name + "' outside [1, 10]");
        }
      }
    }
  }

  std::size_t size() const { return responses_.size(); }
  const std::string& response_name() const { return response_name_; }
  std::span<const std::uint8_t> responses() const { return responses_; }
  std::span<const std::int64_t> ids() const { return ids_; }
  int response(std::size_t i) const { return responses_[i]; }

  std::size_t column_count() const { return columns_.size(); }
  const Column& column(std::size_t c) const { return columns_[c]; }
  std::span<const double> values(std::size_t c) const {
    return columns_[c].values;
  }

  std::vector<std::string> concomitant_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const auto& c : columns_) names.push_back(c.name);
    return names;
  }

  std::optional<std::size_t> find_column(std::string_view name) const {
    const auto key = normalize_name(name);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (normalize_name(columns_[c].name) == key) return c;
    }
    return std::nullopt;
  }

  std::size_t column_index(std::string_view name) const {
    if (auto c = find_column(name)) return *c;
    throw ConfigError("unknown concomitant '" + std::string(name) + "'");
  }

  Record record(std::size_t i) const {
    Record r{ids_[i], responses_[i], {}};
    for (const auto& c : columns_) r.concomitants.emplace(c.name, c.values[i]);
    return r;
  }

  Population with_column(Column column) const {
    if (find_column(column.name)) {
      throw ConfigError("duplicate concomitant '" + column.name + "'");
    }
    auto columns = columns_;
    columns.push_back(std::move(column));
    return Population(response_name_, ids_, responses_, std::move(columns));
  }

 private:
  std::string response_name_;
  std::vector<std::int64_t> ids_;
  std::vector<std::uint8_t> responses_;
  std::vector<Column> columns_;
};

/// Column mapping for header-bearing CSV input.
struct CsvLayout {
  std::string response;
  std::string id;  // optional; row number used when empty
  std::vector<std::string> concomitants;
  std::vector<std::string> ordinal;  // subset of concomitants on the 1..10 scale
};

struct LoadOptions {
  MissingPolicy missing;
  // When set, an "Independent Covariate" column is appended from this seed.
  std::optional<std::uint64_t> covariate_seed;
  // When set, input is a header-bearing CSV with these columns instead of
  // the UCI layout.
  std::optional<CsvLayout> layout;
};

namespace detail {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline bool is_missing(std::string_view f) { return f == "?" || f.empty(); }

inline std::int64_t parse_int(std::string_view f, std::size_t row,
                              std::string_view what) {
  std::int64_t v = 0;
  const auto* end = f.data() + f.size();
  auto [ptr, ec] = std::from_chars(f.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw DataError("row " + std::to_string(row) + ": non-integer " +
                    std::string(what) + " '" + std::string(f) + "'");
  }
  return v;
}

inline double parse_number(std::string_view f, std::size_t row,
                           std::string_view what) {
  double v = 0;
  const auto* end = f.data() + f.size();
  auto [ptr, ec] = std::from_chars(f.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw DataError("row " + std::to_string(row) + ": non-numeric " +
                    std::string(what) + " '" + std::string(f) + "'");
  }
  return v;
}

inline std::uint8_t parse_class(std::string_view f, std::size_t row) {
  if (f == "2" || f == "0") return 0;
  if (f == "4" || f == "1") return 1;
  throw DataError("row " + std::to_string(row) + ": class value '" +
                  std::string(f) + "' outside {2,4}");
}

struct RawTable {
  std::vector<std::int64_t> ids;
  std::vector<std::uint8_t> responses;
  std::vector<Population::Column> columns;
};

inline RawTable read_uci(std::istream& in) {
  RawTable t;
  t.columns.push_back({std::string(wbcd::kSubjectId), {}, false});
  for (auto name : wbcd::kCytological) {
    t.columns.push_back({std::string(name), {}, true});
  }
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 11) {
      throw DataError("row " + std::to_string(row) + ": expected 11 fields, found " +
                      std::to_string(fields.size()));
    }
    if (is_missing(fields[0])) {
      throw DataError("row " + std::to_string(row) + ": missing Subject ID");
    }
    const auto id = parse_int(fields[0], row, "Subject ID");
    t.ids.push_back(id);
    t.columns[0].values.push_back(static_cast<double>(id));
    for (std::size_t k = 1; k <= 9; ++k) {
      t.columns[k].values.push_back(
          is_missing(fields[k])
              ? kMissing
              : static_cast<double>(parse_int(fields[k], row, t.columns[k].name)));
    }
    t.responses.push_back(parse_class(fields[10], row));
  }
  return t;
}

inline RawTable read_header_csv(std::istream& in, const CsvLayout& layout) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty population");
  const auto header = split_csv(line);
  auto locate = [&](std::string_view name) -> std::size_t {
    const auto key = normalize_name(name);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (normalize_name(header[i]) == key) return i;
    }
    throw ConfigError("column '" + std::string(name) + "' not in header");
  };
  if (layout.concomitants.empty()) {
    throw ConfigError("header CSV layout names no concomitant columns");
  }
  const auto response_col = locate(layout.response);
  const std::optional<std::size_t> id_col =
      layout.id.empty() ? std::nullopt : std::optional(locate(layout.id));
  std::vector<std::size_t> cols;
  RawTable t;
  for (const auto& name : layout.concomitants) {
    cols.push_back(locate(name));
    const bool ordinal =
        std::any_of(layout.ordinal.begin(), layout.ordinal.end(),
                    [&](const std::string& o) {
                      return normalize_name(o) == normalize_name(name);
                    });
    t.columns.push_back({name, {}, ordinal});
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    t.ids.push_back(id_col ? parse_int(fields[*id_col], row, "id")
                           : static_cast<std::int64_t>(row - 1));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto f = fields[cols[k]];
      t.columns[k].values.push_back(
          is_missing(f) ? kMissing : parse_number(f, row, t.columns[k].name));
    }
    t.responses.push_back(parse_class(fields[response_col], row));
  }
  return t;
}

// Median of the observed values, rounded half away from zero for ordinal
// columns.
inline double observed_median(const Population::Column& c) {
  std::vector<double> seen;
  for (double v : c.values) {
    if (!std::isnan(v)) seen.push_back(v);
  }
  if (seen.empty()) {
    throw DataError("column '" + c.name + "' has no observed values");
  }
  std::sort(seen.begin(), seen.end());
  const auto n = seen.size();
  const double m =
      n % 2 == 1 ? seen[n / 2] : 0.5 * (seen[n / 2 - 1] + seen[n / 2]);
  return c.ordinal ? std::round(m) : m;
}

inline void apply_missing_policy(RawTable& t, const MissingPolicy& policy) {
  if (policy.mode == MissingMode::drop_rows) {
    std::vector<bool> keep(t.responses.size(), true);
    for (const auto& c : t.columns) {
      for (std::size_t i = 0; i < c.values.size(); ++i) {
        if (std::isnan(c.values[i])) keep[i] = false;
      }
    }
    auto compact = [&](auto& v) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (keep[i]) v[w++] = v[i];
      }
      v.resize(w);
    };
    compact(t.ids);
    compact(t.responses);
    for (auto& c : t.columns) compact(c.values);
    return;
  }
  for (auto& c : t.columns) {
    if (std::none_of(c.values.begin(), c.values.end(),
                     [](double v) { return std::isnan(v); })) {
      continue;
    }
    const double fill = policy.mode == MissingMode::impute_constant
                            ? policy.constant
                            : observed_median(c);
    for (double& v : c.values) {
      if (std::isnan(v)) v = fill;
    }
  }
}

constexpr std::uint64_t kCovariateStream = 0x636f76617269617eULL;

}  // namespace detail

/// Appends a column of integers drawn uniformly from {1,...,10},
/// independent of every other column and fully determined by `seed`.
inline Population add_independent_covariate(const Population& pop,
                                            std::string name,
                                            std::uint64_t seed) {
  auto rng = StreamRng::derive(seed, detail::kCovariateStream, 0);
  Population::Column col{std::move(name), {}, true};
  col.values.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    col.values.push_back(static_cast<double>(uniform_index(rng, 10) + 1));
  }
  return pop.with_column(std::move(col));
}

inline Population parse_population(std::istream& in,
                                   const LoadOptions& options = {}) {
  auto table = options.layout ? detail::read_header_csv(in, *options.layout)
                              : detail::read_uci(in);
  if (table.responses.empty()) throw DataError("empty population");
  detail::apply_missing_policy(table, options.missing);
  if (table.responses.size() < 2) {
    throw DataError("fewer than 2 records after missing-value policy");
  }
  Population pop(std::string(wbcd::kResponse), std::move(table.ids),
                 std::move(table.responses), std::move(table.columns));
  if (options.covariate_seed) {
    pop = add_independent_covariate(pop, std::string(wbcd::kIndependentCovariate),
                                    *options.covariate_seed);
  }
  return pop;
}

inline Population load_population(const std::filesystem::path& path,
                                  const LoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path.string() + "'");
  return parse_population(in, options);
}

inline Population load_population(const std::filesystem::path& path,
                                  const MissingPolicy& policy,
                                  std::optional<std::uint64_t> seed) {
  return load_population(path, LoadOptions{policy, seed, std::nullopt});
}

inline std::size_t malignant_count(const Population& pop) {
  std::size_t k = 0;
  for (auto r : pop.responses()) k += r;
  return k;
}

inline double population_proportion(const Population& pop) {
  return static_cast<double>(malignant_count(pop)) /
         static_cast<double>(pop.size());
}

/// Pearson product-moment correlation of two equal-length columns.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0 || syy == 0) throw DataError("zero variance");
  return sxy / std::sqrt(sxx * syy);
}

/// Point-biserial correlation between the binary response and a concomitant.
inline double correlation(const Population& pop, std::string_view concomitant) {
  const auto c = pop.column_index(concomitant);
  std::vector<double> y(pop.responses().begin(), pop.responses().end());
  return pearson(y, pop.values(c));
}

}  // namespace pros
