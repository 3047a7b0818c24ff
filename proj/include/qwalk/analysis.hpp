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
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/summation.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

/// Position distribution on the contiguous support [x_min, x_min + size),
/// split by coin component. p_total is always p_h + p_v.
struct Distribution {
  int x_min = 0;
  std::vector<double> p_total;
  std::vector<double> p_h;
  std::vector<double> p_v;

  /// Zero distribution over [x_min, x_max].
  static Distribution zeros(int x_min, int x_max) {
    if (x_max < x_min) throw std::invalid_argument("empty distribution support");
    const auto n = static_cast<std::size_t>(x_max - x_min) + 1;
    return {x_min, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  }

  /// Distribution without a coin split: p_h carries the total, p_v is zero.
  static Distribution from_total(int x_min, std::vector<double> total) {
    Distribution d;
    d.x_min = x_min;
    d.p_h = total;
    d.p_v.assign(total.size(), 0.0);
    d.p_total = std::move(total);
    return d;
  }

  std::size_t size() const { return p_total.size(); }
  bool empty() const { return p_total.empty(); }
  int x_max() const { return x_min + static_cast<int>(size()) - 1; }
  bool contains(int x) const { return !empty() && x >= x_min && x <= x_max(); }

  double at(int x) const { return contains(x) ? p_total[index(x)] : 0.0; }
  double h_at(int x) const { return contains(x) ? p_h[index(x)] : 0.0; }
  double v_at(int x) const { return contains(x) ? p_v[index(x)] : 0.0; }

  double total() const {
    CompensatedSum s;
    for (double p : p_total) s.add(p);
    return s.value();
  }

 private:
  std::size_t index(int x) const { return static_cast<std::size_t>(x - x_min); }
};

/// Same distribution moved by k sites.
inline Distribution translate(Distribution d, int k) {
  d.x_min += k;
  return d;
}

/// |a_H(x)|^2 and |a_V(x)|^2 over the whole lattice of the state.
inline Distribution distribution(const WalkerState& state) {
  Distribution d = Distribution::zeros(state.x_min(), state.x_max());
  const auto h = state.h_amplitudes();
  const auto v = state.v_amplitudes();
  for (std::size_t i = 0; i < d.size(); ++i) {
    d.p_h[i] = std::norm(h[i]);
    d.p_v[i] = std::norm(v[i]);
    d.p_total[i] = d.p_h[i] + d.p_v[i];
  }
  return d;
}

/// Mean position sum_x p(x) x.
inline double mean_position(const Distribution& d) {
  CompensatedSum m;
  for (std::size_t i = 0; i < d.size(); ++i) m.add(d.p_total[i] * (d.x_min + static_cast<int>(i)));
  return m.value();
}

/// sum_x p(x) x^2 - (sum_x p(x) x)^2, evaluated in central form
/// sum_x p(x) (x - mu)^2 so that it does not depend on where the origin is.
inline double variance(const Distribution& d) {
  const double mu = mean_position(d);
  CompensatedSum s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double dx = (d.x_min + static_cast<int>(i)) - mu;
    s.add(d.p_total[i] * dx * dx);
  }
  return s.value();
}

/// Half the L1 distance over the union of the supports.
inline double tv_distance(const Distribution& p, const Distribution& q) {
  if (p.empty() && q.empty()) return 0.0;
  const int lo = p.empty() ? q.x_min : q.empty() ? p.x_min : std::min(p.x_min, q.x_min);
  const int hi = p.empty() ? q.x_max() : q.empty() ? p.x_max() : std::max(p.x_max(), q.x_max());
  CompensatedSum s;
  for (int x = lo; x <= hi; ++x) s.add(std::abs(p.at(x) - q.at(x)));
  return std::clamp(0.5 * s.value(), 0.0, 1.0);
}

/// Binomial(n_steps, p_right) placed at x = 2k - n_steps. There is no coin
/// split, so p_h carries the total and p_v is zero.
inline Distribution classical_walk(int n_steps, double p_right) {
  if (n_steps < 0) throw std::invalid_argument("number of steps must be non-negative");
  if (!(p_right >= 0.0 && p_right <= 1.0)) {
    throw std::invalid_argument("p_right must lie in [0, 1]");
  }
  // Forward Kolmogorov recursion on the k = number of right moves.
  std::vector<double> pk(static_cast<std::size_t>(n_steps) + 1, 0.0);
  pk[0] = 1.0;
  for (int step = 1; step <= n_steps; ++step) {
    for (int k = step; k >= 0; --k) {
      const double stay = k < step ? pk[k] * (1.0 - p_right) : 0.0;
      const double moved = k > 0 ? pk[k - 1] * p_right : 0.0;
      pk[k] = stay + moved;
    }
  }
  std::vector<double> total(2 * static_cast<std::size_t>(n_steps) + 1, 0.0);
  for (int k = 0; k <= n_steps; ++k) total[2 * k] = pk[k];
  return Distribution::from_total(-n_steps, std::move(total));
}

/// Fully dephased walk: the classical Markov chain on (position, coin). From
/// either coin state the walker keeps its coin with probability cos^2(2 theta)
/// and flips it with probability sin^2(2 theta), then steps right (H) or left
/// (V). Starts at x = 0 with coin occupations (w_h, w_v).
inline Distribution classical_markov_oracle(int n_steps, double theta, double w_h, double w_v) {
  if (n_steps < 0) throw std::invalid_argument("number of steps must be non-negative");
  if (!(w_h >= 0.0 && w_v >= 0.0) || std::abs(w_h + w_v - 1.0) > 1e-12) {
    throw std::invalid_argument("coin occupations must be non-negative and sum to 1");
  }
  const double keep = std::pow(std::cos(2.0 * theta), 2);
  const double flip = std::pow(std::sin(2.0 * theta), 2);
  Distribution d = Distribution::zeros(-n_steps, n_steps);
  const auto centre = static_cast<std::size_t>(n_steps);
  d.p_h[centre] = w_h;
  d.p_v[centre] = w_v;
  for (int step = 0; step < n_steps; ++step) {
    std::vector<double> h(d.size(), 0.0), v(d.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double to_h = d.p_h[i] * keep + d.p_v[i] * flip;
      const double to_v = d.p_h[i] * flip + d.p_v[i] * keep;
      if (to_h != 0.0) h.at(i + 1) += to_h;
      if (to_v != 0.0) v.at(i - 1) += to_v;
    }
    d.p_h = std::move(h);
    d.p_v = std::move(v);
  }
  for (std::size_t i = 0; i < d.size(); ++i) d.p_total[i] = d.p_h[i] + d.p_v[i];
  return d;
}

enum class TailModel { ExponentialTail, GaussianTail };

inline const char* to_string(TailModel m) {
  return m == TailModel::ExponentialTail ? "exponential" : "gaussian";
}

enum class Wing { Both, Left, Right };

struct TailFitOptions {
  double floor = 1e-6;  // points below this are excluded
  int centre = 0;       // position the tail decays away from
  Wing wing = Wing::Both;
  // When >= 0, sites with |x - centre| >= light_cone are dropped. After n
  // steps the front sites |x - centre| = n carry a single path whose weight
  // no phase disorder can change, so they are not part of the tail.
  int light_cone = -1;
};

/// Semilog fit: log p = intercept - rate * f(x) with f = |x - centre|
/// (exponential) or (x - centre)^2 (Gaussian).
struct FitResult {
  TailModel model = TailModel::ExponentialTail;
  double rate = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points_used = 0;
};

/// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw InsufficientData("line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InsufficientData("line fit needs at least two distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

inline FitResult fit_tail(const Distribution& dist, TailModel model, const TailFitOptions& opts = {}) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.p_total[i];
    if (!(p > 0.0) || p < opts.floor) continue;
    const int offset = dist.x_min + static_cast<int>(i) - opts.centre;
    if (opts.wing == Wing::Left && offset > 0) continue;
    if (opts.wing == Wing::Right && offset < 0) continue;
    if (opts.light_cone >= 0 && std::abs(offset) >= opts.light_cone) continue;
    const double d = std::abs(static_cast<double>(offset));
    xs.push_back(model == TailModel::ExponentialTail ? d : d * d);
    ys.push_back(std::log(p));
  }
  if (xs.size() < 3) {
    throw InsufficientData("tail fit needs at least 3 points above the floor, got " +
                           std::to_string(xs.size()));
  }
  const LineFit line = least_squares_line(xs, ys);
  return {model, -line.slope, line.intercept, line.r_squared, static_cast<int>(xs.size())};
}

struct TrendPoint {
  int step = 0;
  double variance = 0.0;
};

/// Slope b of log sigma^2 = a + b log n over steps in [first_step, last_step].
inline double scaling_exponent(std::span<const TrendPoint> trend, int first_step, int last_step) {
  std::vector<double> xs, ys;
  for (const auto& p : trend) {
    if (p.step < first_step || p.step > last_step || p.step <= 0 || !(p.variance > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(p.step)));
    ys.push_back(std::log(p.variance));
  }
  if (xs.size() < 4) {
    throw InsufficientData("scaling exponent needs at least 4 points with positive variance");
  }
  return least_squares_line(xs, ys).slope;
}

}  // namespace qwalk
