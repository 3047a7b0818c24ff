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
#include <concepts>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qwalk {

using Complex = std::complex<double>;

/// 2x2 coin operator acting on the (H, V) components at one lattice site.
struct CoinMatrix {
  Complex hh{1.0};
  Complex hv{0.0};
  Complex vh{0.0};
  Complex vv{1.0};

  /// Returns the coin applied to the column vector (h, v).
  constexpr std::pair<Complex, Complex> apply(Complex h, Complex v) const {
    return {hh * h + hv * v, vh * h + vv * v};
  }

  constexpr CoinMatrix adjoint() const {
    return {std::conj(hh), std::conj(vh), std::conj(hv), std::conj(vv)};
  }

  constexpr CoinMatrix operator*(const CoinMatrix& rhs) const {
    return {hh * rhs.hh + hv * rhs.vh, hh * rhs.hv + hv * rhs.vv,
            vh * rhs.hh + vv * rhs.vh, vh * rhs.hv + vv * rhs.vv};
  }

  /// Largest entrywise deviation of C^dagger C from the identity.
  double unitarity_defect() const {
    const CoinMatrix p = adjoint() * *this;
    return std::max({std::abs(p.hh - 1.0), std::abs(p.hv), std::abs(p.vh),
                     std::abs(p.vv - 1.0)});
  }

  bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }

  bool is_diagonal() const { return hv == 0.0 && vh == 0.0; }

  friend bool operator==(const CoinMatrix&, const CoinMatrix&) = default;
};

namespace detail {

inline void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string("coin parameter '") + name + "' is not finite");
  }
}

// diag(e^{i phi_h}, e^{i phi_v}) * [[c, s], [s, -c]]
inline CoinMatrix phased_rotation(double c, double s, double phi_h, double phi_v) {
  const Complex eh = phi_h == 0.0 ? Complex{1.0} : std::polar(1.0, phi_h);
  const Complex ev = phi_v == 0.0 ? Complex{1.0} : std::polar(1.0, phi_v);
  return {eh * c, eh * s, ev * s, -(ev * c)};
}

}  // namespace detail

/// Builds the coin diag(e^{i phi_h}, e^{i phi_v}) * R(theta), where R(theta)
/// is the real rotation-reflection [[cos 2theta, sin 2theta], [sin 2theta,
/// -cos 2theta]]. theta = pi/8 with zero phases gives the Hadamard coin.
inline CoinMatrix make_coin(double theta, double phi_h, double phi_v) {
  detail::require_finite(theta, "theta");
  detail::require_finite(phi_h, "phi_h");
  detail::require_finite(phi_v, "phi_v");
  return detail::phased_rotation(std::cos(2.0 * theta), std::sin(2.0 * theta), phi_h, phi_v);
}

/// Anything that yields the coin for a (position, step) pair. `step` is the
/// index of the state the coin acts on, so the first toss uses step 0.
template <typename F>
concept CoinSource = requires(const F& f, int x, int step) {
  { f(x, step) } -> std::convertible_to<CoinMatrix>;
};

/// Coin parameters over the whole lattice and all steps: one rotation angle
/// plus position- and step-dependent phases on the H and V components.
class CoinField {
 public:
  using PhaseFn = std::function<double(int x, int step)>;

  static constexpr double kMaxTheta = std::numbers::pi / 4.0;

  explicit CoinField(double theta, PhaseFn phi_h = {}, PhaseFn phi_v = {})
      : theta_(theta), phi_h_(std::move(phi_h)), phi_v_(std::move(phi_v)) {
    detail::require_finite(theta, "theta");
    if (theta < -1e-12 || theta > kMaxTheta + 1e-12) {
      throw std::invalid_argument("coin angle theta must lie in [0, pi/4]");
    }
    cos2_ = std::cos(2.0 * theta);
    sin2_ = std::sin(2.0 * theta);
  }

  /// Same coin at every site and step.
  static CoinField uniform(double theta, double phi_h = 0.0, double phi_v = 0.0) {
    detail::require_finite(phi_h, "phi_h");
    detail::require_finite(phi_v, "phi_v");
    PhaseFn h, v;
    if (phi_h != 0.0) h = [phi_h](int, int) { return phi_h; };
    if (phi_v != 0.0) v = [phi_v](int, int) { return phi_v; };
    return CoinField(theta, std::move(h), std::move(v));
  }

  static CoinField hadamard() { return uniform(std::numbers::pi / 8.0); }

  double theta() const { return theta_; }
  double phi_h(int x, int step) const { return phi_h_ ? phi_h_(x, step) : 0.0; }
  double phi_v(int x, int step) const { return phi_v_ ? phi_v_(x, step) : 0.0; }

  /// Bitwise equal to make_coin(theta(), phi_h(x, step), phi_v(x, step)).
  CoinMatrix operator()(int x, int step) const {
    const double h = phi_h(x, step);
    const double v = phi_v(x, step);
    detail::require_finite(h, "phi_h");
    detail::require_finite(v, "phi_v");
    return detail::phased_rotation(cos2_, sin2_, h, v);
  }

 private:
  double theta_;
  double cos2_ = 1.0;
  double sin2_ = 0.0;
  PhaseFn phi_h_;
  PhaseFn phi_v_;
};

static_assert(CoinSource<CoinField>);

}  // namespace qwalk
