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

#include "qwalk/coin.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_near(Complex actual, Complex expected, double tol = 1e-15) {
  EXPECT_NEAR(actual.real(), expected.real(), tol);
  EXPECT_NEAR(actual.imag(), expected.imag(), tol);
}

}  // namespace

TEST(make_coin, hadamard_at_pi_over_8) {
  const CoinMatrix c = make_coin(kPi / 8, 0, 0);
  expect_near(c.hh, kInvSqrt2);
  expect_near(c.hv, kInvSqrt2);
  expect_near(c.vh, kInvSqrt2);
  expect_near(c.vv, -kInvSqrt2);
}

TEST(make_coin, zero_angle_is_reflection) {
  const CoinMatrix c = make_coin(0, 0, 0);
  EXPECT_EQ(c, (CoinMatrix{1.0, 0.0, 0.0, -1.0}));
  EXPECT_TRUE(c.is_diagonal());
}

TEST(make_coin, vertical_phase_multiplies_second_row) {
  const CoinMatrix c = make_coin(kPi / 8, 0, kPi / 2);
  expect_near(c.hh, kInvSqrt2);
  expect_near(c.hv, kInvSqrt2);
  expect_near(c.vh, Complex(0, kInvSqrt2));
  expect_near(c.vv, Complex(0, -kInvSqrt2));
}

TEST(make_coin, rejects_non_finite_input) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(make_coin(nan, 0, 0), std::invalid_argument);
  EXPECT_THROW(make_coin(0, inf, 0), std::invalid_argument);
  EXPECT_THROW(make_coin(0, 0, -inf), std::invalid_argument);
}

TEST(make_coin, always_unitary_and_factorizes) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> any(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double theta = any(rng), ph = any(rng), pv = any(rng);
    const CoinMatrix c = make_coin(theta, ph, pv);
    ASSERT_LE(c.unitarity_defect(), 1e-12);
    // Stripping the phases leaves the real rotation-reflection.
    const Complex eh = std::polar(1.0, -ph), ev = std::polar(1.0, -pv);
    expect_near(c.hh * eh, std::cos(2 * theta), 1e-12);
    expect_near(c.hv * eh, std::sin(2 * theta), 1e-12);
    expect_near(c.vh * ev, std::sin(2 * theta), 1e-12);
    expect_near(c.vv * ev, -std::cos(2 * theta), 1e-12);
  }
}

TEST(coin_field, matches_make_coin_bitwise) {
  const CoinField field(0.3, [](int x, int n) { return 0.1 * x + 0.01 * n; },
                        [](int x, int n) { return -0.2 * x + 0.05 * n; });
  for (int x = -5; x <= 5; ++x) {
    for (int n = 0; n < 4; ++n) {
      EXPECT_EQ(field(x, n), make_coin(0.3, 0.1 * x + 0.01 * n, -0.2 * x + 0.05 * n));
    }
  }
}

TEST(coin_field, uniform_and_hadamard) {
  EXPECT_EQ(CoinField::hadamard()(3, 7), make_coin(kPi / 8, 0, 0));
  EXPECT_EQ(CoinField::uniform(0.2, 0.4, -1.0)(-9, 2), make_coin(0.2, 0.4, -1.0));
}

TEST(coin_field, rejects_angle_outside_quarter_pi) {
  EXPECT_THROW(CoinField(-0.1), std::invalid_argument);
  EXPECT_THROW(CoinField(kPi / 4 + 1e-6), std::invalid_argument);
  EXPECT_NO_THROW(CoinField(kPi / 4));
  EXPECT_NO_THROW(CoinField(0.0));
}

TEST(coin_field, non_finite_phase_is_reported) {
  const CoinField field(0.1, {}, [](int, int) { return std::numeric_limits<double>::infinity(); });
  EXPECT_THROW(field(0, 0), std::invalid_argument);
}

TEST(coin_matrix, random_unitary_oracle_is_unitary) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(qwalk::testing::random_unitary(rng).is_unitary());
}
