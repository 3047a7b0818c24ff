// Copyright 2026 The qwalk Authors
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

#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/disorder.hpp"
#include "qwalk/ensemble.hpp"

namespace qwalk::io {

using nlohmann::json;

inline constexpr int kFormatMajor = 1;
inline constexpr const char* kFormatVersion = "1.0";
inline constexpr const char* kDistributionHeader = "step,x,p_total,p_H,p_V";

/// Malformed input. `where` names the line ("line 7") or field ("field 'seed'").
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Rejects versions whose major component differs from kFormatMajor.
inline void check_format_version(std::string_view version, const std::string& where) {
  const auto dot = version.find('.');
  const std::string major(version.substr(0, dot));
  int value = -1;
  try {
    std::size_t used = 0;
    value = std::stoi(major, &used);
    if (used != major.size()) value = -1;
  } catch (const std::exception&) {
  }
  if (value != kFormatMajor) {
    throw FormatError(where, "unsupported format version '" + std::string(version) + "'");
  }
}

/// %.17g, which round-trips every double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Parses an angle in radians. Accepts plain decimals ("0.3927") and
/// rational multiples of pi ("pi", "-pi/8", "1.14pi", "3pi/20", "0.5*pi").
/// The multiple is reduced as an exact fraction before multiplying by pi.
inline double parse_angle(std::string_view text) {
  auto blank = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!text.empty() && blank(text.front())) text.remove_prefix(1);
  while (!text.empty() && blank(text.back())) text.remove_suffix(1);
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto bad = [&] { return std::invalid_argument("malformed angle '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();
  const auto pi_at = s.find("pi");
  if (pi_at == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size() || !std::isfinite(v)) throw bad();
    return v;
  }

  std::string coeff = s.substr(0, pi_at);
  std::string rest = s.substr(pi_at + 2);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  bool negative = false;
  if (!coeff.empty() && (coeff[0] == '-' || coeff[0] == '+')) {
    negative = coeff[0] == '-';
    coeff.erase(0, 1);
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  if (coeff.empty()) {
    num = 1;
  } else {
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : coeff) {
      if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        seen_digit = true;
        if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10 || den > 1'000'000'000'000LL) {
          throw bad();
        }
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
      } else {
        throw bad();
      }
    }
    if (!seen_digit) throw bad();
  }
  if (!rest.empty()) {
    if (rest[0] != '/' || rest.size() < 2) throw bad();
    std::int64_t d = 0;
    for (char c : rest.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c)) || d > 1'000'000'000LL) throw bad();
      d = d * 10 + (c - '0');
    }
    if (d == 0) throw bad();
    den *= d;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  const double v = std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return negative ? -v : v;
}

// ---------------------------------------------------------------------------
// Distribution tables (CSV)

/// Recorded distributions keyed by step.
struct DistributionTable {
  std::map<int, Distribution> by_step;

  int final_step() const {
    if (by_step.empty()) throw std::logic_error("empty distribution table");
    return by_step.rbegin()->first;
  }
  const Distribution& final_distribution() const { return by_step.rbegin()->second; }
};

inline void write_distribution_csv(std::ostream& out, const EnsembleSummary& summary) {
  out << "# qwalk distribution table, format " << kFormatVersion << '\n';
  out << kDistributionHeader << '\n';
  for (std::size_t s = 0; s < summary.steps.size(); ++s) {
    const Distribution& d = summary.mean_distribution[s];
    for (std::size_t i = 0; i < d.size(); ++i) {
      out << summary.steps[s] << ',' << d.x_min + static_cast<int>(i) << ','
          << format_double(d.p_total[i]) << ',' << format_double(d.p_h[i]) << ','
          << format_double(d.p_v[i]) << '\n';
    }
  }
}

inline DistributionTable read_distribution_csv(std::istream& in) {
  struct Row {
    int x;
    double total, h, v;
  };
  std::map<int, std::vector<Row>> rows;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  bool version_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto at = line.find("format ");
      if (at != std::string::npos) {
        check_format_version(line.substr(at + 7), where);
        version_seen = true;
      }
      continue;
    }
    if (!header_seen) {
      if (line != kDistributionHeader) {
        throw FormatError(where, "expected header '" + std::string(kDistributionHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 5) throw FormatError(where, "expected 5 columns");
    try {
      std::size_t used = 0;
      auto to_int = [&](const std::string& c) {
        const int v = std::stoi(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
        return v;
      };
      auto to_double = [&](const std::string& c) {
        const double v = std::stod(c, &used);
        if (used != c.size() || !std::isfinite(v) || v < 0.0) throw std::invalid_argument(c);
        return v;
      };
      const int step = to_int(cells[0]);
      rows[step].push_back({to_int(cells[1]), to_double(cells[2]), to_double(cells[3]),
                            to_double(cells[4])});
    } catch (const std::exception&) {
      throw FormatError(where, "malformed row '" + line + "'");
    }
  }
  if (!version_seen) throw FormatError("line 1", "missing format version comment");
  if (!header_seen) throw FormatError("line " + std::to_string(line_no), "missing header");
  if (rows.empty()) throw FormatError("line " + std::to_string(line_no), "no data rows");

  DistributionTable table;
  for (auto& [step, list] : rows) {
    int lo = list.front().x, hi = list.front().x;
    for (const auto& r : list) {
      lo = std::min(lo, r.x);
      hi = std::max(hi, r.x);
    }
    Distribution d = Distribution::zeros(lo, hi);
    for (const auto& r : list) {
      const auto i = static_cast<std::size_t>(r.x - lo);
      d.p_total[i] = r.total;
      d.p_h[i] = r.h;
      d.p_v[i] = r.v;
    }
    table.by_step.emplace(step, std::move(d));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Scenario configuration (JSON)

inline std::string_view to_string(VarianceMode m) {
  return m == VarianceMode::OfMeanDistribution ? "of-mean-distribution" : "mean-of-realizations";
}

namespace detail {

inline std::string field(const std::string& name) { return "field '" + name + "'"; }

inline double angle_from_json(const json& j, const std::string& name) {
  try {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_angle(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(field(name), e.what());
  }
  throw FormatError(field(name), "expected a number or an angle string such as \"1.14pi\"");
}

inline json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& name) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw FormatError(field(name), "expected a number or a [re, im] pair");
}

template <typename T>
T integer_from_json(const json& j, const std::string& name, T lo) {
  if (!j.is_number_integer()) throw FormatError(field(name), "expected an integer");
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
      throw FormatError(field(name), "out of range");
    }
    return static_cast<T>(v);
  }
  const auto v = j.get<std::int64_t>();
  if (v < static_cast<std::int64_t>(lo) ||
      (v > 0 && static_cast<std::uint64_t>(v) > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))) {
    throw FormatError(field(name), "out of range");
  }
  return static_cast<T>(v);
}

}  // namespace detail

inline json to_json(const ScenarioConfig& c) {
  json j;
  j["variant"] = std::string(to_string(c.disorder.kind));
  j["n_steps"] = c.n_steps;
  j["n_realizations"] = c.n_realizations;
  j["seed"] = c.disorder.seed;
  j["phi_max"] = c.disorder.phi_max;
  if (std::isinf(c.disorder.phase_ratio)) {
    j["phase_ratio"] = "inf";
  } else {
    j["phase_ratio"] = c.disorder.phase_ratio;
  }
  j["theta"] = c.disorder.theta;
  j["theta_grid"] = c.disorder.theta_grid;
  j["initial"] = {{"x0", c.initial.x0},
                  {"c_h", detail::complex_to_json(c.initial.c_h)},
                  {"c_v", detail::complex_to_json(c.initial.c_v)}};
  j["record_every_step"] = c.record_every_step;
  j["variance_mode"] = std::string(to_string(c.variance_mode));
  if (c.lattice_half_width) j["lattice_half_width"] = *c.lattice_half_width;
  return j;
}

/// Overlays the keys present in `j` onto `base`. Unknown keys and bad values
/// raise FormatError naming the field.
inline ScenarioConfig apply_config_json(const json& j, ScenarioConfig base) {
  using detail::field;
  if (!j.is_object()) throw FormatError("config", "expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "format_version") {
      if (!value.is_string()) throw FormatError(field(key), "expected a string");
      check_format_version(value.get<std::string>(), field(key));
    } else if (key == "variant") {
      const auto kind = value.is_string() ? disorder_kind_from_string(value.get<std::string>())
                                          : std::nullopt;
      if (!kind) throw FormatError(field(key), "expected homogeneous|static|dynamic|slow");
      base.disorder.kind = *kind;
    } else if (key == "n_steps") {
      base.n_steps = detail::integer_from_json<int>(value, key, 0);
    } else if (key == "n_realizations") {
      base.n_realizations = detail::integer_from_json<std::size_t>(value, key, 0);
    } else if (key == "seed") {
      base.disorder.seed = detail::integer_from_json<std::uint64_t>(value, key, 0);
    } else if (key == "phi_max") {
      base.disorder.phi_max = detail::angle_from_json(value, key);
    } else if (key == "phase_ratio") {
      if (value.is_string() && (value == "inf" || value == "infinity")) {
        base.disorder.phase_ratio = std::numeric_limits<double>::infinity();
      } else if (value.is_number()) {
        base.disorder.phase_ratio = value.get<double>();
      } else {
        throw FormatError(field(key), "expected a positive number or \"inf\"");
      }
    } else if (key == "theta") {
      base.disorder.theta = detail::angle_from_json(value, key);
    } else if (key == "theta_grid") {
      std::vector<double> grid;
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          grid.push_back(detail::angle_from_json(value[i], key + "[" + std::to_string(i) + "]"));
        }
      } else if (value.is_object()) {
        const double lo = value.contains("lo") ? detail::angle_from_json(value["lo"], key + ".lo") : 0.0;
        const double hi = value.contains("hi") ? detail::angle_from_json(value["hi"], key + ".hi")
                                               : std::numbers::pi / 4.0;
        const int count =
            value.contains("count") ? detail::integer_from_json<int>(value["count"], key + ".count", 0) : 6;
        try {
          grid = theta_grid(lo, hi, count);
        } catch (const std::invalid_argument& e) {
          throw FormatError(field(key), e.what());
        }
      } else {
        throw FormatError(field(key), "expected an array of angles or {lo, hi, count}");
      }
      base.disorder.theta_grid = std::move(grid);
    } else if (key == "initial") {
      if (value.is_string()) {
        const auto name = value.get<std::string>();
        if (name == "symmetric") {
          base.initial = InitialCondition::symmetric(base.initial.x0);
        } else if (name == "horizontal" || name == "H") {
          base.initial = InitialCondition::horizontal(base.initial.x0);
        } else if (name == "vertical" || name == "V") {
          base.initial = {base.initial.x0, {0.0, 0.0}, {1.0, 0.0}};
        } else {
          throw FormatError(field(key), "expected symmetric|horizontal|vertical or an object");
        }
      } else if (value.is_object()) {
        for (const auto& [k, v] : value.items()) {
          if (k == "x0") {
            base.initial.x0 = detail::integer_from_json<int>(v, "initial.x0", std::numeric_limits<int>::min());
          } else if (k == "c_h") {
            base.initial.c_h = detail::complex_from_json(v, "initial.c_h");
          } else if (k == "c_v") {
            base.initial.c_v = detail::complex_from_json(v, "initial.c_v");
          } else {
            throw FormatError(field("initial." + k), "unknown key");
          }
        }
      } else {
        throw FormatError(field(key), "expected a preset name or an object");
      }
    } else if (key == "record_every_step") {
      if (!value.is_boolean()) throw FormatError(field(key), "expected true or false");
      base.record_every_step = value.get<bool>();
    } else if (key == "variance_mode") {
      if (value == "of-mean-distribution") {
        base.variance_mode = VarianceMode::OfMeanDistribution;
      } else if (value == "mean-of-realizations") {
        base.variance_mode = VarianceMode::MeanOfRealizations;
      } else {
        throw FormatError(field(key), "expected of-mean-distribution|mean-of-realizations");
      }
    } else if (key == "lattice_half_width") {
      base.lattice_half_width = detail::integer_from_json<int>(value, key, 0);
    } else {
      throw FormatError(field(key), "unknown key");
    }
  }
  return base;
}

/// Parses a config document; syntax errors report line and column.
inline json parse_json_document(std::istream& in, const std::string& what) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(what, e.what());
  }
}

// ---------------------------------------------------------------------------
// Summary and manifest documents

struct SummaryExtras {
  std::optional<FitResult> exponential_fit;
  std::optional<FitResult> gaussian_fit;
  int fit_light_cone = -1;
  std::optional<double> scaling_exponent;
  int scaling_first_step = 0;
  int scaling_last_step = 0;
  double tv_to_markov_oracle = 0.0;
  double tv_to_binomial = 0.0;
};

inline json to_json(const FitResult& f) {
  return {{"model", to_string(f.model)},   {"rate", f.rate},
          {"intercept", f.intercept},      {"r_squared", f.r_squared},
          {"n_points_used", f.n_points_used}};
}

inline json summary_json(const std::string& scenario, const ScenarioConfig& config,
                         const EnsembleSummary& summary, const SummaryExtras& extras) {
  json trend = json::array();
  for (const auto& v : summary.variance_per_step) {
    trend.push_back({{"step", v.step}, {"variance", v.variance}, {"std_error", v.std_error}});
  }
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "qwalk.summary";
  j["scenario"] = scenario;
  j["config"] = to_json(config);
  j["master_seed"] = summary.master_seed;
  j["n_realizations"] = summary.n_realizations;
  j["variance_trend"] = std::move(trend);
  j["fits"] = {{"step", summary.steps.back()},
               {"light_cone", extras.fit_light_cone},
               {"exponential", extras.exponential_fit ? to_json(*extras.exponential_fit) : json()},
               {"gaussian", extras.gaussian_fit ? to_json(*extras.gaussian_fit) : json()}};
  j["scaling_exponent"] =
      extras.scaling_exponent
          ? json{{"first_step", extras.scaling_first_step},
                 {"last_step", extras.scaling_last_step},
                 {"value", *extras.scaling_exponent}}
          : json();
  j["classical_reference"] = {{"tv_to_markov_oracle", extras.tv_to_markov_oracle},
                              {"tv_to_binomial", extras.tv_to_binomial}};
  return j;
}

struct RunManifest {
  std::string scenario;
  ScenarioConfig config;
  std::uint64_t master_seed = 0;
  std::string artifact_version;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> outputs;
};

inline json to_json(const RunManifest& m) {
  return {{"format_version", kFormatVersion},
          {"kind", "qwalk.manifest"},
          {"scenario", m.scenario},
          {"config", to_json(m.config)},
          {"master_seed", m.master_seed},
          {"artifact_version", m.artifact_version},
          {"wall_clock_seconds", m.wall_clock_seconds},
          {"outputs", m.outputs}};
}

inline RunManifest manifest_from_json(const json& j) {
  using detail::field;
  if (!j.is_object()) throw FormatError("manifest", "expected a JSON object");
  if (!j.contains("format_version") || !j["format_version"].is_string()) {
    throw FormatError(field("format_version"), "missing");
  }
  check_format_version(j["format_version"].get<std::string>(), field("format_version"));
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    throw FormatError(field("scenario"), "missing or not a string");
  }
  if (!j.contains("config")) throw FormatError(field("config"), "missing");
  RunManifest m;
  m.scenario = j["scenario"].get<std::string>();
  m.config = apply_config_json(j["config"], ScenarioConfig{});
  m.master_seed = m.config.disorder.seed;
  if (j.contains("artifact_version") && j["artifact_version"].is_string()) {
    m.artifact_version = j["artifact_version"].get<std::string>();
  }
  if (j.contains("outputs") && j["outputs"].is_array()) {
    for (const auto& o : j["outputs"]) {
      if (o.is_string()) m.outputs.push_back(o.get<std::string>());
    }
  }
  return m;
}

}  // namespace qwalk::io
