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
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

/// Coin-resolved wave function of the walker on the finite lattice
/// x in [-half_width, half_width] after `step_index` steps.
///
/// Amplitudes are stored as two dense arrays (H and V components) indexed by
/// x + origin_offset(). Positions outside the lattice read as zero.
class WalkerState {
 public:
  WalkerState() = default;

  explicit WalkerState(int half_width, int step_index = 0)
      : half_width_(half_width), step_index_(step_index) {
    if (half_width < 0) throw std::invalid_argument("lattice half width must be non-negative");
    if (step_index < 0) throw std::invalid_argument("step index must be non-negative");
    h_.assign(lattice_size(), Complex{});
    v_.assign(lattice_size(), Complex{});
  }

  int half_width() const { return half_width_; }
  int step_index() const { return step_index_; }
  int origin_offset() const { return half_width_; }
  int x_min() const { return -half_width_; }
  int x_max() const { return half_width_; }
  std::size_t lattice_size() const { return 2 * static_cast<std::size_t>(half_width_) + 1; }
  bool contains(int x) const { return std::abs(x) <= half_width_; }

  Complex h(int x) const { return contains(x) ? h_[index(x)] : Complex{}; }
  Complex v(int x) const { return contains(x) ? v_[index(x)] : Complex{}; }

  void set(int x, Complex h, Complex v) {
    if (!contains(x)) {
      throw std::out_of_range("position " + std::to_string(x) + " outside lattice of half width " +
                              std::to_string(half_width_));
    }
    h_[index(x)] = h;
    v_[index(x)] = v;
  }

  std::span<const Complex> h_amplitudes() const { return h_; }
  std::span<const Complex> v_amplitudes() const { return v_; }

  double probability(int x) const { return std::norm(h(x)) + std::norm(v(x)); }

  double norm() const {
    double total = 0.0;
    for (std::size_t i = 0; i < h_.size(); ++i) total += std::norm(h_[i]) + std::norm(v_[i]);
    return total;
  }

  template <CoinSource Coins>
  friend WalkerState apply_coin(const WalkerState& state, const Coins& coins);
  friend WalkerState shift(const WalkerState& state);

 private:
  std::size_t index(int x) const { return static_cast<std::size_t>(x + half_width_); }

  int half_width_ = 0;
  int step_index_ = 0;
  std::vector<Complex> h_;
  std::vector<Complex> v_;
};

/// Smallest lattice half width that holds n_steps of a walk started at x0.
inline int required_half_width(int x0, int n_steps) { return std::abs(x0) + n_steps; }

/// Point state |x0> (x) (c_h |H> + c_v |V>) at step 0.
inline WalkerState initial_state(int x0, Complex c_h, Complex c_v, int half_width) {
  if (!std::isfinite(std::abs(c_h)) || !std::isfinite(std::abs(c_v))) {
    throw std::invalid_argument("initial coin amplitudes must be finite");
  }
  const double n = std::norm(c_h) + std::norm(c_v);
  if (std::abs(n - 1.0) > 1e-10) {
    throw std::invalid_argument("initial coin state is not normalized (|cH|^2+|cV|^2 = " +
                                std::to_string(n) + ")");
  }
  if (half_width < 0) throw std::invalid_argument("lattice half width must be non-negative");
  if (std::abs(x0) > half_width) {
    throw std::out_of_range("initial position " + std::to_string(x0) +
                            " outside lattice of half width " + std::to_string(half_width));
  }
  WalkerState state(half_width);
  state.set(x0, c_h, c_v);
  return state;
}

/// Applies the coin for the state's current step at every site. Sites with
/// no amplitude are skipped, so structural zeros stay exactly zero.
template <CoinSource Coins>
WalkerState apply_coin(const WalkerState& state, const Coins& coins) {
  WalkerState out = state;
  const int step = state.step_index_;
  for (std::size_t i = 0; i < state.h_.size(); ++i) {
    const Complex h = state.h_[i];
    const Complex v = state.v_[i];
    if (h == 0.0 && v == 0.0) continue;
    const CoinMatrix c = coins(static_cast<int>(i) - state.half_width_, step);
    out.h_[i] = c.hh * h + c.hv * v;
    out.v_[i] = c.vh * h + c.vv * v;
  }
  return out;
}

/// Conditional shift: H moves to x+1, V moves to x-1. Throws LatticeOverflow
/// if amplitude would leave the lattice.
inline WalkerState shift(const WalkerState& state) {
  const std::size_t last = state.h_.size() - 1;
  if (state.h_[last] != 0.0 || state.v_[0] != 0.0) {
    throw LatticeOverflow("walker reached the lattice edge at step " +
                          std::to_string(state.step_index_) + " (half width " +
                          std::to_string(state.half_width_) + ")");
  }
  WalkerState out(state.half_width_, state.step_index_ + 1);
  for (std::size_t i = 0; i < last; ++i) {
    out.h_[i + 1] = state.h_[i];
    out.v_[i] = state.v_[i + 1];
  }
  return out;
}

/// One full step: coin toss followed by the conditional shift.
template <CoinSource Coins>
WalkerState step(const WalkerState& state, const Coins& coins) {
  return shift(apply_coin(state, coins));
}

/// Calls visit(state) for the initial state and after each of n_steps steps.
template <CoinSource Coins, typename Visitor>
void evolve_each(WalkerState state, int n_steps, const Coins& coins, Visitor&& visit) {
  if (n_steps < 0) throw std::invalid_argument("number of steps must be non-negative");
  visit(std::as_const(state));
  for (int k = 0; k < n_steps; ++k) {
    state = step(state, coins);
    visit(std::as_const(state));
  }
}

/// Full trajectory: element k is (S C_k) ... (S C_1) |psi_0>, k = 0..n_steps.
template <CoinSource Coins>
std::vector<WalkerState> evolve(const WalkerState& initial, int n_steps, const Coins& coins) {
  std::vector<WalkerState> out;
  out.reserve(static_cast<std::size_t>(std::max(n_steps, 0)) + 1);
  evolve_each(initial, n_steps, coins, [&](const WalkerState& s) { out.push_back(s); });
  return out;
}

}  // namespace qwalk
