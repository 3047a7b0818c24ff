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

#include <utility>

#include "qwalk/coin.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

/// Two-step propagator at one site, resolved in the coin basis:
///
///   a(x, n+2) = beta_plus * a(x-2, n) + gamma * a(x, n) + beta_minus * a(x+2, n)
///
/// where a(.,.) is the (H, V) column at that site. The blocks are 2x2 complex
/// matrices but not unitary on their own.
struct TransferCoefficients {
  CoinMatrix gamma;       // stay at x
  CoinMatrix beta_plus;   // arrive from x-2
  CoinMatrix beta_minus;  // arrive from x+2

  std::pair<Complex, Complex> apply(std::pair<Complex, Complex> left,
                                    std::pair<Complex, Complex> centre,
                                    std::pair<Complex, Complex> right) const {
    const auto [lh, lv] = beta_plus.apply(left.first, left.second);
    const auto [ch, cv] = gamma.apply(centre.first, centre.second);
    const auto [rh, rv] = beta_minus.apply(right.first, right.second);
    return {lh + ch + rh, lv + cv + rv};
  }

  /// Value at (x, n+2) predicted from the state at step n.
  std::pair<Complex, Complex> apply(const WalkerState& state, int x) const {
    return apply({state.h(x - 2), state.v(x - 2)}, {state.h(x), state.v(x)},
                 {state.h(x + 2), state.v(x + 2)});
  }
};

/// Blocks for site x over steps n -> n+2. They depend only on the coins at
/// x-2, x, x+2 for step n and at x-1, x+1 for step n+1.
template <CoinSource Coins>
TransferCoefficients two_step_coefficients(const Coins& coins, int step, int x) {
  const CoinMatrix first_left = coins(x - 2, step);
  const CoinMatrix first_mid = coins(x, step);
  const CoinMatrix first_right = coins(x + 2, step);
  const CoinMatrix second_left = coins(x - 1, step + 1);
  const CoinMatrix second_right = coins(x + 1, step + 1);

  const Complex zero{};
  TransferCoefficients t;
  // H at x passes through x-1 (H out of x-2 or V out of x); V at x passes
  // through x+1 (H out of x or V out of x+2).
  t.beta_plus = {second_left.hh * first_left.hh, second_left.hh * first_left.hv, zero, zero};
  t.gamma = {second_left.hv * first_mid.vh, second_left.hv * first_mid.vv,
             second_right.vh * first_mid.hh, second_right.vh * first_mid.hv};
  t.beta_minus = {zero, zero, second_right.vv * first_right.vh, second_right.vv * first_right.vv};
  return t;
}

}  // namespace qwalk
