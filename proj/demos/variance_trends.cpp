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

// Prints the variance of all four environments over 50 steps as CSV, ready
// for plotting: ballistic (homogeneous, slow drift), diffusive (dynamic
// disorder) and saturating (static disorder).

#include <cstdio>
#include <numbers>
#include <vector>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;
  constexpr int kSteps = 50;
  const double pi = std::numbers::pi;

  auto make = [](DisorderSpec spec, InitialCondition init, std::size_t realizations) {
    ScenarioConfig c;
    c.disorder = std::move(spec);
    c.initial = init;
    c.n_steps = kSteps;
    c.n_realizations = realizations;
    return c;
  };
  const std::vector<std::pair<const char*, ScenarioConfig>> scenarios = {
      {"homogeneous", make(DisorderSpec::homogeneous(), InitialCondition::symmetric(), 1)},
      {"static", make(DisorderSpec::static_disorder(1.14 * pi, 42), InitialCondition::horizontal(), 1000)},
      {"dynamic", make(DisorderSpec::dynamic_disorder(pi, 42), InitialCondition::horizontal(), 1000)},
      {"slow", make(DisorderSpec::slow_coin(), InitialCondition::symmetric(), 0)},
  };

  std::vector<std::vector<TrendPoint>> trends;
  for (const auto& [name, config] : scenarios) trends.push_back(variance_trend(config));

  std::printf("step");
  for (const auto& [name, config] : scenarios) std::printf(",%s", name);
  std::printf("\n");
  for (int k = 0; k <= kSteps; ++k) {
    std::printf("%d", k);
    for (const auto& t : trends) std::printf(",%.6f", t[k].variance);
    std::printf("\n");
  }
}
