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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/io.hpp"

#ifndef QWALK_VERSION
#define QWALK_VERSION "dev"
#endif

namespace qwalk::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3 };

inline constexpr const char* kWorkersEnv = "QWALK_WORKERS";

/// Worker count from QWALK_WORKERS, else the machine's parallelism.
inline unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return detail::resolve_workers(0);
}

/// Preset configurations for the four environments.
///   homogeneous: 28 steps, Hadamard coin, symmetric coin state
///   static/dynamic: 11 steps, |0>|H>, 10^4 realizations, phi_max 1.14pi / pi
///   slow: 10 steps, symmetric coin state, 6-point theta grid over [0, pi/4]
/// "custom" starts from the homogeneous preset and expects a config file.
inline ScenarioConfig preset(const std::string& scenario) {
  ScenarioConfig c;
  if (scenario == "homogeneous" || scenario == "custom") {
    c.disorder = DisorderSpec::homogeneous();
    c.initial = InitialCondition::symmetric();
    c.n_steps = 28;
  } else if (scenario == "static" || scenario == "dynamic") {
    c.disorder = scenario == "static" ? DisorderSpec::static_disorder(1.14 * std::numbers::pi, 0)
                                      : DisorderSpec::dynamic_disorder(std::numbers::pi, 0);
    c.initial = InitialCondition::horizontal();
    c.n_steps = 11;
    c.n_realizations = 10000;
  } else if (scenario == "slow") {
    c.disorder = DisorderSpec::slow_coin();
    c.initial = InitialCondition::symmetric();
    c.n_steps = 10;
  } else {
    throw io::FormatError("scenario", "unknown scenario '" + scenario +
                                          "' (expected homogeneous|static|dynamic|slow|custom)");
  }
  return c;
}

/// Derived quantities reported next to every ensemble.
inline io::SummaryExtras summarize(const ScenarioConfig& config, const EnsembleSummary& summary) {
  io::SummaryExtras extras;
  const Distribution& last = summary.final_distribution();
  const int n = summary.steps.back();
  TailFitOptions fit_opts;
  fit_opts.centre = config.initial.x0;
  fit_opts.light_cone = n;
  extras.fit_light_cone = n;
  try {
    extras.exponential_fit = fit_tail(last, TailModel::ExponentialTail, fit_opts);
    extras.gaussian_fit = fit_tail(last, TailModel::GaussianTail, fit_opts);
  } catch (const InsufficientData&) {
    extras.exponential_fit.reset();
    extras.gaussian_fit.reset();
  }
  if (summary.steps.size() > 1) {
    extras.scaling_first_step = std::max(1, n / 3);
    extras.scaling_last_step = n;
    try {
      const auto trend = summary.trend();
      extras.scaling_exponent = scaling_exponent(trend, extras.scaling_first_step, n);
    } catch (const InsufficientData&) {
      extras.scaling_exponent.reset();
    }
  }
  const double w_h = std::norm(config.initial.c_h);
  const double w_v = std::norm(config.initial.c_v);
  const double total = w_h + w_v;
  const Distribution markov = translate(
      classical_markov_oracle(n, config.disorder.theta, w_h / total, w_v / total), config.initial.x0);
  extras.tv_to_markov_oracle = tv_distance(last, markov);
  extras.tv_to_binomial = tv_distance(last, translate(classical_walk(n, 0.5), config.initial.x0));
  return extras;
}

struct RunOptions {
  std::string scenario;
  ScenarioConfig config;
  std::filesystem::path out_dir = ".";
  unsigned workers = 0;
};

/// Runs one scenario and writes <scenario>_distribution.csv,
/// <scenario>_summary.json and <scenario>_manifest.json into out_dir.
inline int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  ScenarioConfig config;
  try {
    opts.config.validate();
    config = opts.config.resolved();
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto started = std::chrono::steady_clock::now();
  EnsembleSummary summary;
  try {
    summary = run_ensemble(config, {opts.workers});
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }

  try {
    fs::create_directories(opts.out_dir);
    const fs::path csv_path = opts.out_dir / (opts.scenario + "_distribution.csv");
    const fs::path summary_path = opts.out_dir / (opts.scenario + "_summary.json");
    const fs::path manifest_path = opts.out_dir / (opts.scenario + "_manifest.json");
    {
      std::ofstream f(csv_path, std::ios::binary);
      io::write_distribution_csv(f, summary);
      if (!f) throw std::runtime_error("cannot write " + csv_path.string());
    }
    const io::SummaryExtras extras = summarize(config, summary);
    {
      std::ofstream f(summary_path, std::ios::binary);
      f << io::summary_json(opts.scenario, config, summary, extras).dump(2) << '\n';
      if (!f) throw std::runtime_error("cannot write " + summary_path.string());
    }
    io::RunManifest manifest;
    manifest.scenario = opts.scenario;
    manifest.config = config;
    manifest.master_seed = config.disorder.seed;
    manifest.artifact_version = QWALK_VERSION;
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    manifest.outputs = {csv_path.filename().string(), summary_path.filename().string()};
    {
      std::ofstream f(manifest_path, std::ios::binary);
      f << io::to_json(manifest).dump(2) << '\n';
      if (!f) throw std::runtime_error("cannot write " + manifest_path.string());
    }

    const VariancePoint& v = summary.final_variance();
    out << opts.scenario << ": " << summary.n_realizations << " realization(s), "
        << config.n_steps << " steps\n";
    out << "  variance at step " << v.step << ": " << io::format_double(v.variance)
        << " (std error " << io::format_double(v.std_error) << ")\n";
    if (extras.exponential_fit) {
      out << "  tail fit r^2: exponential " << extras.exponential_fit->r_squared << ", gaussian "
          << extras.gaussian_fit->r_squared << '\n';
    }
    out << "  distance to classical oracle: " << extras.tv_to_markov_oracle << '\n';
    out << "  wrote " << csv_path.string() << ", " << summary_path.string() << ", "
        << manifest_path.string() << '\n';
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

/// Compares the final recorded step of two distribution tables.
inline int cmd_compare(const std::filesystem::path& file_a, const std::filesystem::path& file_b,
                       std::ostream& out, std::ostream& err) {
  io::DistributionTable a, b;
  for (auto [path, table] : {std::pair{&file_a, &a}, std::pair{&file_b, &b}}) {
    std::ifstream f(*path, std::ios::binary);
    if (!f) {
      err << "cannot open " << path->string() << '\n';
      return kConfigError;
    }
    try {
      *table = io::read_distribution_csv(f);
    } catch (const io::FormatError& e) {
      err << path->string() << ": " << e.what() << '\n';
      return kConfigError;
    }
  }
  const int step_a = a.final_step();
  const int step_b = b.final_step();
  const Distribution& pa = a.final_distribution();
  const Distribution& pb = b.final_distribution();
  if ((step_a - step_b) % 2 != 0) {
    err << "warning: step parity differs (" << step_a << " vs " << step_b
        << "); comparing over the union of supports\n";
  }
  const double var_a = variance(pa);
  const double var_b = variance(pb);
  out << "file_a: " << file_a.string() << " (step " << step_a << ")\n";
  out << "file_b: " << file_b.string() << " (step " << step_b << ")\n";
  out << "tv_distance: " << io::format_double(tv_distance(pa, pb)) << '\n';
  out << "variance_a: " << io::format_double(var_a) << '\n';
  out << "variance_b: " << io::format_double(var_b) << '\n';
  out << "variance_difference: " << io::format_double(var_a - var_b) << '\n';
  out << "x,p_a,p_b,residual\n";
  const int lo = std::min(pa.x_min, pb.x_min);
  const int hi = std::max(pa.x_max(), pb.x_max());
  for (int x = lo; x <= hi; ++x) {
    if (pa.at(x) == 0.0 && pb.at(x) == 0.0) continue;
    out << x << ',' << io::format_double(pa.at(x)) << ',' << io::format_double(pb.at(x)) << ','
        << io::format_double(pa.at(x) - pb.at(x)) << '\n';
  }
  return kOk;
}

struct SweepRow {
  double phi_max = 0.0;
  VariancePoint variance;
};

/// One ensemble per phi_max, returning the variance at the final step.
inline std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::vector<double>& phi_max_list,
                                   unsigned workers = 0) {
  if (phi_max_list.empty()) throw std::invalid_argument("phi_max list must not be empty");
  std::vector<SweepRow> rows;
  for (double phi : phi_max_list) {
    ScenarioConfig c = base;
    c.disorder.phi_max = phi;
    c.record_every_step = false;
    rows.push_back({phi, run_ensemble(c, {workers}).final_variance()});
  }
  return rows;
}

struct SweepOptions {
  ScenarioConfig base;  // static or dynamic
  std::vector<double> phi_max_list;
  unsigned workers = 0;
  std::filesystem::path out_file;  // empty: stdout only
};

inline int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  const DisorderKind kind = opts.base.disorder.kind;
  if (kind != DisorderKind::Static && kind != DisorderKind::Dynamic) {
    err << "config error: sweep needs the static or dynamic scenario\n";
    return kConfigError;
  }
  std::vector<SweepRow> rows;
  try {
    if (opts.phi_max_list.empty()) throw std::invalid_argument("--phi-max-list must not be empty");
    for (double phi : opts.phi_max_list) {
      ScenarioConfig c = opts.base;
      c.disorder.phi_max = phi;
      c.validate();
    }
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    rows = sweep(opts.base, opts.phi_max_list, opts.workers);
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  std::ostringstream table;
  table << "# qwalk sweep table, format " << io::kFormatVersion << '\n';
  table << "variant,step,phi_max,phi_max_over_pi,variance,std_error\n";
  for (const auto& r : rows) {
    table << to_string(kind) << ',' << r.variance.step << ',' << io::format_double(r.phi_max) << ','
          << io::format_double(r.phi_max / std::numbers::pi) << ','
          << io::format_double(r.variance.variance) << ',' << io::format_double(r.variance.std_error)
          << '\n';
  }
  out << table.str();
  if (!opts.out_file.empty()) {
    std::ofstream f(opts.out_file, std::ios::binary);
    f << table.str();
    if (!f) {
      err << "runtime error: cannot write " << opts.out_file.string() << '\n';
      return kRuntimeError;
    }
  }
  return kOk;
}

}  // namespace qwalk::cli
