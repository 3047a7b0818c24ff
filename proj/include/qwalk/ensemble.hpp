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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/disorder.hpp"
#include "qwalk/summation.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

/// Point start |x0> (x) (c_h |H> + c_v |V>).
struct InitialCondition {
  int x0 = 0;
  Complex c_h{std::numbers::sqrt2 / 2.0, 0.0};
  Complex c_v{0.0, std::numbers::sqrt2 / 2.0};

  /// (|H> + i|V>) / sqrt(2), which gives a symmetric Hadamard walk.
  static InitialCondition symmetric(int x0 = 0) { return {x0}; }
  static InitialCondition horizontal(int x0 = 0) { return {x0, {1.0, 0.0}, {0.0, 0.0}}; }
};

/// How the per-step variance of an ensemble is formed.
enum class VarianceMode {
  OfMeanDistribution,  // sigma^2 of the ensemble-averaged distribution
  MeanOfRealizations,  // average of each realization's own sigma^2
};

struct ScenarioConfig {
  DisorderSpec disorder;
  InitialCondition initial;
  int n_steps = 10;
  std::size_t n_realizations = 1;
  bool record_every_step = true;
  VarianceMode variance_mode = VarianceMode::OfMeanDistribution;
  std::optional<int> lattice_half_width;  // unset: sized from x0 and n_steps

  int half_width() const {
    return lattice_half_width ? *lattice_half_width : required_half_width(initial.x0, n_steps);
  }

  /// Copy with the realization count fixed by the variant: one for the
  /// deterministic homogeneous walk, the grid size for slow drift.
  ScenarioConfig resolved() const {
    ScenarioConfig c = *this;
    if (c.disorder.kind == DisorderKind::Homogeneous) c.n_realizations = 1;
    if (c.disorder.kind == DisorderKind::SlowCoin) c.n_realizations = c.disorder.theta_grid.size();
    return c;
  }

  void validate() const {
    disorder.validate();
    if (n_steps < 0) throw std::invalid_argument("config field 'n_steps': must be non-negative");
    if ((disorder.kind == DisorderKind::Static || disorder.kind == DisorderKind::Dynamic) &&
        n_realizations == 0) {
      throw std::invalid_argument("config field 'n_realizations': must be at least 1");
    }
    if (lattice_half_width && *lattice_half_width < std::abs(initial.x0)) {
      throw std::invalid_argument("config field 'lattice_half_width': must cover the start position");
    }
    const double n = std::norm(initial.c_h) + std::norm(initial.c_v);
    if (std::abs(n - 1.0) > 1e-10) {
      throw std::invalid_argument("config field 'initial': coin state is not normalized");
    }
  }
};

struct VariancePoint {
  int step = 0;
  double variance = 0.0;
  double std_error = 0.0;  // sample std of per-realization sigma^2 / sqrt(N)
};

struct EnsembleSummary {
  std::vector<int> steps;  // recorded steps, ascending
  std::vector<Distribution> mean_distribution;
  std::vector<VariancePoint> variance_per_step;
  std::size_t n_realizations = 0;
  std::uint64_t master_seed = 0;

  const Distribution& final_distribution() const { return mean_distribution.back(); }
  const VariancePoint& final_variance() const { return variance_per_step.back(); }

  std::vector<TrendPoint> trend() const {
    std::vector<TrendPoint> out;
    out.reserve(variance_per_step.size());
    for (const auto& v : variance_per_step) out.push_back({v.step, v.variance});
    return out;
  }
};

struct EnsembleOptions {
  unsigned workers = 0;  // 0 selects std::thread::hardware_concurrency()
};

namespace detail {

// Realizations are reduced in fixed blocks. The block layout never depends on
// the worker count, and blocks are merged in index order, so the summary is
// bitwise identical for any number of workers.
inline constexpr std::size_t kBlockSize = 64;

struct StepAccumulator {
  std::vector<CompensatedSum> h;
  std::vector<CompensatedSum> v;
  CompensatedSum variance;
  CompensatedSum variance_sq;

  explicit StepAccumulator(std::size_t width) : h(width), v(width) {}

  void merge(const StepAccumulator& o) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      h[i].merge(o.h[i]);
      v[i].merge(o.v[i]);
    }
    variance.merge(o.variance);
    variance_sq.merge(o.variance_sq);
  }
};

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// MemberField: std::size_t -> CoinSource, giving the coins of one member.
template <typename MemberField>
EnsembleSummary run_members(const ScenarioConfig& config, std::size_t n_members,
                            MemberField&& member_field, const EnsembleOptions& options) {
  if (n_members == 0) throw std::invalid_argument("ensemble needs at least one member");
  const int half_width = config.half_width();
  const auto width = 2 * static_cast<std::size_t>(half_width) + 1;

  std::vector<int> steps;
  if (config.record_every_step) {
    for (int k = 0; k <= config.n_steps; ++k) steps.push_back(k);
  } else {
    steps.push_back(config.n_steps);
  }

  const std::size_t n_blocks = (n_members + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<StepAccumulator>> blocks(n_blocks);
  std::vector<std::exception_ptr> errors(n_blocks);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
      try {
        std::vector<StepAccumulator> acc(steps.size(), StepAccumulator(width));
        const std::size_t end = std::min(n_members, (b + 1) * kBlockSize);
        for (std::size_t m = b * kBlockSize; m < end; ++m) {
          const auto coins = member_field(m);
          WalkerState start = initial_state(config.initial.x0, config.initial.c_h,
                                            config.initial.c_v, half_width);
          std::size_t slot = 0;
          evolve_each(std::move(start), config.n_steps, coins, [&](const WalkerState& s) {
            if (slot >= steps.size() || s.step_index() != steps[slot]) return;
            const Distribution d = distribution(s);
            StepAccumulator& a = acc[slot++];
            for (std::size_t i = 0; i < width; ++i) {
              a.h[i].add(d.p_h[i]);
              a.v[i].add(d.p_v[i]);
            }
            const double var = variance(d);
            a.variance.add(var);
            a.variance_sq.add(var * var);
          });
        }
        blocks[b] = std::move(acc);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_workers(options.workers), n_blocks));
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<StepAccumulator> total(steps.size(), StepAccumulator(width));
  for (const auto& block : blocks) {
    for (std::size_t s = 0; s < steps.size(); ++s) total[s].merge(block[s]);
  }

  EnsembleSummary summary;
  summary.steps = steps;
  summary.n_realizations = n_members;
  summary.master_seed = config.disorder.seed;
  const auto n = static_cast<double>(n_members);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    Distribution d = Distribution::zeros(-half_width, half_width);
    for (std::size_t i = 0; i < width; ++i) {
      d.p_h[i] = total[s].h[i].value() / n;
      d.p_v[i] = total[s].v[i].value() / n;
      d.p_total[i] = d.p_h[i] + d.p_v[i];
    }
    const double sum = total[s].variance.value();
    const double sum_sq = total[s].variance_sq.value();
    double std_error = 0.0;
    if (n_members > 1) {
      const double sample_var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
      std_error = std::sqrt(sample_var / n);
    }
    const double var =
        config.variance_mode == VarianceMode::OfMeanDistribution ? variance(d) : sum / n;
    summary.variance_per_step.push_back({steps[s], var, std_error});
    summary.mean_distribution.push_back(std::move(d));
  }
  return summary;
}

}  // namespace detail

/// Uniform-weight average over the coherent walks of every angle in the
/// slow-drift grid. Variance is taken on the averaged distribution.
inline EnsembleSummary run_slow_average(const ScenarioConfig& config,
                                        const EnsembleOptions& options = {}) {
  if (config.disorder.kind != DisorderKind::SlowCoin) {
    throw std::invalid_argument("run_slow_average requires the slow-drift variant");
  }
  config.validate();
  const ScenarioConfig c = config.resolved();
  const auto& grid = c.disorder.theta_grid;
  return detail::run_members(
      c, grid.size(), [&](std::size_t m) { return coin_field_for(c.disorder, grid[m]); }, options);
}

/// Averages probability distributions (never amplitudes) over disorder
/// realizations. Realization r uses the pattern drawn from (seed, r).
inline EnsembleSummary run_ensemble(const ScenarioConfig& config, const EnsembleOptions& options = {}) {
  config.validate();
  const ScenarioConfig c = config.resolved();
  const DisorderSpec& spec = c.disorder;
  const int hw = c.half_width();
  switch (spec.kind) {
    case DisorderKind::Homogeneous:
      return detail::run_members(
          c, 1, [&](std::size_t) { return coin_field_for(spec, spec.theta); }, options);
    case DisorderKind::Static:
      return detail::run_members(
          c, c.n_realizations,
          [&](std::size_t r) { return coin_field_for(spec, sample_static_pattern(spec, r, hw)); },
          options);
    case DisorderKind::Dynamic:
      return detail::run_members(
          c, c.n_realizations,
          [&](std::size_t r) {
            return coin_field_for(spec, sample_dynamic_pattern(spec, r, hw, c.n_steps));
          },
          options);
    case DisorderKind::SlowCoin:
      return run_slow_average(c, options);
  }
  throw std::logic_error("unhandled disorder variant");
}

/// sigma^2 of the ensemble-mean distribution at every step 0..n_steps.
inline std::vector<TrendPoint> variance_trend(const ScenarioConfig& config,
                                              const EnsembleOptions& options = {}) {
  if (!config.record_every_step) {
    throw std::invalid_argument("variance_trend requires record_every_step");
  }
  ScenarioConfig c = config;
  c.variance_mode = VarianceMode::OfMeanDistribution;
  return run_ensemble(c, options).trend();
}

}  // namespace qwalk
