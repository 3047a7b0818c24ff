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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwalk/cli.hpp"

namespace {

using qwalk::io::json;

struct ScenarioFlags {
  std::string config_file;
  int steps = 0;
  std::string phi_max;
  std::string theta;
  std::string phase_ratio;
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
  std::string initial;
  int x0 = 0;
  int grid_count = 0;
  std::string grid_lo;
  std::string grid_hi;
  std::string variance_mode;
  int half_width = 0;

  CLI::Option* steps_opt = nullptr;
  CLI::Option* realizations_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* x0_opt = nullptr;
  CLI::Option* grid_count_opt = nullptr;
  CLI::Option* half_width_opt = nullptr;

  void add_to(CLI::App* app, bool with_grid) {
    app->add_option("--config", config_file, "JSON scenario config overlaid on the preset");
    steps_opt = app->add_option("--steps", steps, "Number of walk steps")->check(CLI::NonNegativeNumber);
    app->add_option("--phi-max", phi_max, "Disorder strength, e.g. 1.14pi");
    app->add_option("--theta", theta, "Coin angle, e.g. pi/8");
    app->add_option("--phase-ratio", phase_ratio, "phi_V / phi_H coupling (number or inf)");
    realizations_opt = app->add_option("--realizations", realizations, "Monte Carlo realizations");
    seed_opt = app->add_option("--seed", seed, "Master seed");
    app->add_option("--initial", initial, "Coin state: symmetric|horizontal|vertical");
    x0_opt = app->add_option("--x0", x0, "Start position");
    app->add_option("--variance-mode", variance_mode, "of-mean-distribution|mean-of-realizations");
    half_width_opt = app->add_option("--half-width", half_width, "Override the lattice half width");
    if (with_grid) {
      grid_count_opt = app->add_option("--theta-grid-count", grid_count, "Points in the slow-drift grid");
      app->add_option("--theta-lo", grid_lo, "Lower end of the slow-drift grid");
      app->add_option("--theta-hi", grid_hi, "Upper end of the slow-drift grid");
    }
  }

  // Flags become a config overlay so they share the file's validation.
  json overlay() const {
    json j = json::object();
    if (*steps_opt) j["n_steps"] = steps;
    if (!phi_max.empty()) j["phi_max"] = phi_max;
    if (!theta.empty()) j["theta"] = theta;
    if (!phase_ratio.empty()) {
      if (phase_ratio == "inf" || phase_ratio == "infinity") {
        j["phase_ratio"] = "inf";
      } else {
        try {
          j["phase_ratio"] = std::stod(phase_ratio);
        } catch (const std::exception&) {
          throw qwalk::io::FormatError("flag '--phase-ratio'", "expected a number or inf");
        }
      }
    }
    if (*realizations_opt) j["n_realizations"] = realizations;
    if (*seed_opt) j["seed"] = seed;
    if (!initial.empty()) j["initial"] = initial;
    if (*x0_opt) j["initial_x0"] = x0;
    if (!variance_mode.empty()) j["variance_mode"] = variance_mode;
    if (*half_width_opt) j["lattice_half_width"] = half_width;
    if (grid_count_opt && (*grid_count_opt || !grid_lo.empty() || !grid_hi.empty())) {
      json g = json::object();
      if (*grid_count_opt) g["count"] = grid_count;
      if (!grid_lo.empty()) g["lo"] = grid_lo;
      if (!grid_hi.empty()) g["hi"] = grid_hi;
      j["theta_grid"] = g;
    }
    return j;
  }

  qwalk::ScenarioConfig resolve(qwalk::ScenarioConfig config) const {
    if (!config_file.empty()) {
      std::ifstream f(config_file);
      if (!f) throw qwalk::io::FormatError(config_file, "cannot open config file");
      config = qwalk::io::apply_config_json(qwalk::io::parse_json_document(f, config_file), config);
    }
    json j = overlay();
    if (j.contains("initial_x0")) {
      // Keep the coin state while moving the start.
      const int start = j["initial_x0"].get<int>();
      j.erase("initial_x0");
      config = qwalk::io::apply_config_json(j, config);
      config.initial.x0 = start;
      return config;
    }
    return qwalk::io::apply_config_json(j, config);
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time coined quantum walks under static, dynamic and slow disorder"};
  app.set_version_flag("--version", QWALK_VERSION);
  app.require_subcommand(1);

  unsigned workers = qwalk::cli::default_workers();

  auto* run = app.add_subcommand("run", "Run a scenario and write distribution, summary and manifest");
  std::string scenario;
  std::string manifest_file;
  std::string out_dir = ".";
  ScenarioFlags run_flags;
  run->add_option("scenario", scenario, "homogeneous|static|dynamic|slow|custom");
  run->add_option("--from-manifest", manifest_file, "Re-run exactly from a manifest");
  run->add_option("--out-dir", out_dir, "Directory for output files");
  run->add_option("--workers", workers, "Worker threads (default: $QWALK_WORKERS or all cores)");
  run_flags.add_to(run, true);

  auto* compare = app.add_subcommand("compare", "Compare the final step of two distribution tables");
  std::string file_a, file_b;
  compare->add_option("file_a", file_a)->required();
  compare->add_option("file_b", file_b)->required();

  auto* sweep = app.add_subcommand("sweep", "Variance versus disorder strength");
  std::string sweep_scenario = "static";
  std::string phi_list;
  std::string sweep_out;
  ScenarioFlags sweep_flags;
  sweep->add_option("--scenario", sweep_scenario, "static|dynamic");
  sweep->add_option("--phi-max-list", phi_list, "Comma-separated strengths, e.g. 0,0.5pi,pi")->required();
  sweep->add_option("--out", sweep_out, "Also write the table to this file");
  sweep->add_option("--workers", workers, "Worker threads");
  sweep_flags.add_to(sweep, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qwalk::cli::kConfigError;
  }

  try {
    if (*run) {
      qwalk::cli::RunOptions opts;
      opts.out_dir = out_dir;
      opts.workers = workers;
      if (!manifest_file.empty()) {
        std::ifstream f(manifest_file);
        if (!f) throw qwalk::io::FormatError(manifest_file, "cannot open manifest");
        const auto manifest =
            qwalk::io::manifest_from_json(qwalk::io::parse_json_document(f, manifest_file));
        opts.scenario = manifest.scenario;
        opts.config = manifest.config;
      } else {
        if (scenario.empty()) throw qwalk::io::FormatError("scenario", "missing scenario name");
        opts.scenario = scenario;
        opts.config = run_flags.resolve(qwalk::cli::preset(scenario));
      }
      return qwalk::cli::cmd_run(opts, std::cout, std::cerr);
    }
    if (*compare) return qwalk::cli::cmd_compare(file_a, file_b, std::cout, std::cerr);
    if (*sweep) {
      if (sweep_scenario != "static" && sweep_scenario != "dynamic") {
        throw qwalk::io::FormatError("flag '--scenario'", "sweep supports static|dynamic");
      }
      qwalk::cli::SweepOptions opts;
      opts.base = sweep_flags.resolve(qwalk::cli::preset(sweep_scenario));
      for (const auto& item : split_list(phi_list)) {
        try {
          opts.phi_max_list.push_back(qwalk::io::parse_angle(item));
        } catch (const std::invalid_argument& e) {
          throw qwalk::io::FormatError("flag '--phi-max-list'", e.what());
        }
      }
      opts.workers = workers;
      opts.out_file = sweep_out;
      return qwalk::cli::cmd_sweep(opts, std::cout, std::cerr);
    }
  } catch (const qwalk::io::FormatError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qwalk::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return qwalk::cli::kRuntimeError;
  }
  return qwalk::cli::kOk;
}
