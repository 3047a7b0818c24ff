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

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

enum class DisorderKind { Homogeneous, Static, Dynamic, SlowCoin };

inline std::string_view to_string(DisorderKind kind) {
  switch (kind) {
    case DisorderKind::Homogeneous: return "homogeneous";
    case DisorderKind::Static: return "static";
    case DisorderKind::Dynamic: return "dynamic";
    case DisorderKind::SlowCoin: return "slow";
  }
  return "unknown";
}

inline std::optional<DisorderKind> disorder_kind_from_string(std::string_view name) {
  if (name == "homogeneous") return DisorderKind::Homogeneous;
  if (name == "static") return DisorderKind::Static;
  if (name == "dynamic") return DisorderKind::Dynamic;
  if (name == "slow") return DisorderKind::SlowCoin;
  return std::nullopt;
}

/// Inclusive uniform grid of `count` angles from lo to hi.
inline std::vector<double> theta_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("theta grid needs at least one point");
  if (!(lo <= hi)) throw std::invalid_argument("theta grid bounds must satisfy lo <= hi");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double span = hi - lo;
  for (int k = 0; k < count; ++k) grid[k] = lo + span * k / (count - 1);
  grid.back() = hi;
  return grid;
}

/// Six points over [0, pi/4], endpoints included.
inline std::vector<double> default_theta_grid() { return theta_grid(0.0, std::numbers::pi / 4.0, 6); }

/// Selects one of the four environments and carries its parameters.
///
/// Random phases phi_V are uniform on [-phi_max, phi_max]; phi_H is tied to
/// phi_V through phi_H = phi_V / phase_ratio. An infinite ratio switches the
/// H phase off entirely.
struct DisorderSpec {
  static constexpr double kDefaultPhaseRatio = 3.5;

  DisorderKind kind = DisorderKind::Homogeneous;
  double phi_max = 0.0;
  double phase_ratio = kDefaultPhaseRatio;
  double theta = std::numbers::pi / 8.0;
  std::vector<double> theta_grid;
  std::uint64_t seed = 0;

  static DisorderSpec homogeneous(double theta = std::numbers::pi / 8.0) {
    DisorderSpec s;
    s.theta = theta;
    return s;
  }

  static DisorderSpec static_disorder(double phi_max, std::uint64_t seed,
                                      double theta = std::numbers::pi / 8.0,
                                      double phase_ratio = kDefaultPhaseRatio) {
    DisorderSpec s;
    s.kind = DisorderKind::Static;
    s.phi_max = phi_max;
    s.seed = seed;
    s.theta = theta;
    s.phase_ratio = phase_ratio;
    return s;
  }

  static DisorderSpec dynamic_disorder(double phi_max, std::uint64_t seed,
                                       double theta = std::numbers::pi / 8.0,
                                       double phase_ratio = kDefaultPhaseRatio) {
    DisorderSpec s = static_disorder(phi_max, seed, theta, phase_ratio);
    s.kind = DisorderKind::Dynamic;
    return s;
  }

  static DisorderSpec slow_coin(std::vector<double> grid = default_theta_grid()) {
    DisorderSpec s;
    s.kind = DisorderKind::SlowCoin;
    s.theta_grid = std::move(grid);
    return s;
  }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
      throw std::invalid_argument("disorder field '" + field + "': " + why);
    };
    auto theta_ok = [](double t) {
      return std::isfinite(t) && t >= 0.0 && t <= CoinField::kMaxTheta + 1e-12;
    };
    if (!std::isfinite(phi_max) || phi_max < 0.0 || phi_max > 2.0 * std::numbers::pi + 1e-12) {
      fail("phi_max", "must lie in [0, 2pi]");
    }
    if (std::isnan(phase_ratio) || !(phase_ratio > 0.0)) fail("phase_ratio", "must be positive");
    switch (kind) {
      case DisorderKind::Homogeneous:
        if (phi_max != 0.0) fail("phi_max", "must be 0 for the homogeneous lattice");
        [[fallthrough]];
      case DisorderKind::Static:
      case DisorderKind::Dynamic:
        if (!theta_ok(theta)) fail("theta", "must lie in [0, pi/4]");
        break;
      case DisorderKind::SlowCoin:
        if (theta_grid.empty()) fail("theta_grid", "must not be empty");
        for (double t : theta_grid) {
          if (!theta_ok(t)) fail("theta_grid", "every angle must lie in [0, pi/4]");
        }
        break;
    }
  }
};

/// Random phase field for one disorder realization.
///
/// Values are tabulated for the lattice the pattern was sampled for; queries
/// outside it are drawn from the same counter-based stream, so the pattern is
/// defined (and identical) everywhere.
class PhasePattern {
 public:
  PhasePattern(DisorderKind kind, double phi_max, double phase_ratio, CounterRng rng,
               int half_width, int n_steps)
      : kind_(kind), phi_max_(phi_max), phase_ratio_(phase_ratio), rng_(rng),
        half_width_(half_width), n_steps_(kind == DisorderKind::Static ? 1 : n_steps) {
    const std::size_t width = 2 * static_cast<std::size_t>(half_width_) + 1;
    table_.resize(width * static_cast<std::size_t>(n_steps_));
    for (int n = 0; n < n_steps_; ++n) {
      for (int x = -half_width_; x <= half_width_; ++x) table_[slot(x, n)] = draw(x, n);
    }
  }

  DisorderKind kind() const { return kind_; }
  double phi_max() const { return phi_max_; }
  double phase_ratio() const { return phase_ratio_; }
  int half_width() const { return half_width_; }

  double phi_v(int x, int step) const {
    if (kind_ == DisorderKind::Static) step = 0;
    if (std::abs(x) <= half_width_ && step >= 0 && step < n_steps_) return table_[slot(x, step)];
    return draw(x, step);
  }

  double phi_h(int x, int step) const { return phi_v(x, step) / phase_ratio_; }

 private:
  std::size_t slot(int x, int step) const {
    return static_cast<std::size_t>(step) * (2 * static_cast<std::size_t>(half_width_) + 1) +
           static_cast<std::size_t>(x + half_width_);
  }

  double draw(int x, int step) const { return rng_.symmetric(site_counter(x, step), phi_max_); }

  DisorderKind kind_;
  double phi_max_;
  double phase_ratio_;
  CounterRng rng_;
  int half_width_;
  int n_steps_;
  std::vector<double> table_;
};

/// Position-only phases: one uniform draw per site, reused at every step.
inline PhasePattern sample_static_pattern(const DisorderSpec& spec, std::uint64_t realization,
                                          int half_width) {
  if (spec.kind != DisorderKind::Static) {
    throw std::invalid_argument("sample_static_pattern requires a static disorder spec");
  }
  spec.validate();
  return PhasePattern(DisorderKind::Static, spec.phi_max, spec.phase_ratio,
                      CounterRng(spec.seed, realization), half_width, 1);
}

/// Independent uniform draw for every (site, step) pair.
inline PhasePattern sample_dynamic_pattern(const DisorderSpec& spec, std::uint64_t realization,
                                           int half_width, int n_steps) {
  if (spec.kind != DisorderKind::Dynamic) {
    throw std::invalid_argument("sample_dynamic_pattern requires a dynamic disorder spec");
  }
  if (n_steps < 0) throw std::invalid_argument("number of steps must be non-negative");
  spec.validate();
  return PhasePattern(DisorderKind::Dynamic, spec.phi_max, spec.phase_ratio,
                      CounterRng(spec.seed, realization), half_width, n_steps);
}

/// Coin field realizing a sampled phase pattern with the spec's coin angle.
inline CoinField coin_field_for(const DisorderSpec& spec, PhasePattern pattern) {
  if (pattern.kind() != spec.kind) {
    throw std::invalid_argument("phase pattern does not match the disorder variant");
  }
  auto shared = std::make_shared<const PhasePattern>(std::move(pattern));
  return CoinField(
      spec.theta, [shared](int x, int n) { return shared->phi_h(x, n); },
      [shared](int x, int n) { return shared->phi_v(x, n); });
}

/// Phase-free coin field at a fixed angle (homogeneous lattice or one member
/// of the slow-drift grid).
inline CoinField coin_field_for(const DisorderSpec& spec, double theta) {
  if (spec.kind == DisorderKind::Static || spec.kind == DisorderKind::Dynamic) {
    throw std::invalid_argument("disordered variants need a sampled phase pattern");
  }
  return CoinField::uniform(theta);
}

}  // namespace qwalk
