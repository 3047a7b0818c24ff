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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qwalk/cli.hpp"
#include "qwalk/qwalk.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++g_failures;
  std::printf("%s %-4s %-28s %7.2fs  %s%s\n", pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str(),
              in_time ? "" : " [over time budget]");
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ScenarioConfig config(DisorderSpec spec, InitialCondition init, int steps, std::size_t n) {
  ScenarioConfig c;
  c.disorder = std::move(spec);
  c.initial = init;
  c.n_steps = steps;
  c.n_realizations = n;
  return c;
}

bool bitwise_equal(const EnsembleSummary& a, const EnsembleSummary& b) {
  if (a.steps != b.steps || a.n_realizations != b.n_realizations) return false;
  for (std::size_t s = 0; s < a.mean_distribution.size(); ++s) {
    const Distribution& p = a.mean_distribution[s];
    const Distribution& q = b.mean_distribution[s];
    if (p.x_min != q.x_min || p.p_total != q.p_total || p.p_h != q.p_h || p.p_v != q.p_v) return false;
    if (a.variance_per_step[s].variance != b.variance_per_step[s].variance) return false;
    if (a.variance_per_step[s].std_error != b.variance_per_step[s].std_error) return false;
  }
  return true;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int field = 0; field < 50; ++field) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const int x0 = static_cast<int>(rng() % 5) - 2;
    const CoinMatrix u = qwalk::testing::random_unitary(rng);
    const Complex c_h = u.hh, c_v = u.vh;  // a random normalized coin state
    const qwalk::testing::RandomCoinTable coins(rng(), std::abs(x0) + n, n, field % 2 == 0);
    const auto paths = qwalk::testing::brute_force_path_sum(n, x0, c_h, c_v, coins);
    const int hw = required_half_width(x0, n);
    const WalkerState last = evolve(initial_state(x0, c_h, c_v, hw), n, coins).back();
    for (int x = -hw; x <= hw; ++x) {
      for (int c = 0; c < 2; ++c) {
        const auto it = paths.find({x, c});
        const Complex want = it == paths.end() ? Complex{} : it->second;
        worst = std::max(worst, std::abs((c == 0 ? last.h(x) : last.v(x)) - want));
      }
    }
  }
  return {worst < 1e-9, fmt("max amplitude error %.3g over 50 fields", worst)};
}

Outcome ballistic_scaling() {
  const auto t = variance_trend(config(DisorderSpec::homogeneous(), InitialCondition::symmetric(), 50, 1));
  const double b = scaling_exponent(t, 10, 50);
  return {b >= 1.9 && b <= 2.1, fmt("exponent %.4f over steps 10-50", b)};
}

Outcome classical_limit() {
  const ScenarioConfig c =
      config(DisorderSpec::dynamic_disorder(kPi, 42), InitialCondition::horizontal(), 11, 10000);
  const EnsembleSummary s = run_ensemble(c);
  const double tv = tv_distance(s.final_distribution(), classical_markov_oracle(11, kPi / 8, 1, 0));
  const VariancePoint& v = s.final_variance();
  const double b = scaling_exponent(s.trend(), 3, 11);
  const bool ok = tv < 0.01 && std::abs(v.variance - 11.0) <= 3 * v.std_error && b >= 0.85 && b <= 1.15;
  return {ok, fmt("tv %.4f, var %.3f +- %.3f, exponent %.3f", tv, v.variance, v.std_error, b)};
}

Outcome localization() {
  const ScenarioConfig c =
      config(DisorderSpec::static_disorder(1.14 * kPi, 42), InitialCondition::horizontal(), 11, 10000);
  const EnsembleSummary s = run_ensemble(c);
  const double var11 = s.final_variance().variance;
  const double hom11 = run_ensemble(config(DisorderSpec::homogeneous(), InitialCondition::horizontal(), 11, 1))
                           .final_variance()
                           .variance;
  const bool a = var11 < 11.0 && var11 < hom11;

  TailFitOptions opts;
  opts.light_cone = 11;
  const double r_exp = fit_tail(s.final_distribution(), TailModel::ExponentialTail, opts).r_squared;
  const double r_gau = fit_tail(s.final_distribution(), TailModel::GaussianTail, opts).r_squared;
  const bool b = r_exp > r_gau;

  const auto t =
      variance_trend(config(DisorderSpec::static_disorder(1.14 * kPi, 42), InitialCondition::horizontal(), 50, 1000));
  const double growth = (t[50].variance - t[30].variance) / t[30].variance;
  const bool cc = growth < 0.1;

  return {a && b && cc,
          fmt("(a) var11 %.3f vs 11 and %.3f: %s; (b) r2 exp %.4f gauss %.4f: %s; "
              "(c) var30 %.3f var50 %.3f growth %.4f < 0.1: %s",
              var11, hom11, a ? "ok" : "no", r_exp, r_gau, b ? "ok" : "no", t[30].variance, t[50].variance, growth,
              cc ? "ok" : "no")};
}

Outcome monotone_transition() {
  const std::vector<double> phis{0.0, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi, kPi};
  std::string detail;
  bool ok = true;
  double static_pi = 0, dynamic_pi = 0;
  for (const char* name : {"static", "dynamic"}) {
    const auto rows = cli::sweep(cli::preset(name), phis);
    detail += std::string(name) + " [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail += fmt("%s%.2f", i ? " " : "", rows[i].variance.variance);
      if (i > 0) {
        const auto& prev = rows[i - 1].variance;
        const auto& cur = rows[i].variance;
        if (cur.variance > prev.variance + 2 * std::hypot(prev.std_error, cur.std_error)) ok = false;
      }
    }
    detail += "] ";
    (std::string(name) == "static" ? static_pi : dynamic_pi) = rows.back().variance.variance;
  }
  ok = ok && static_pi <= dynamic_pi;
  return {ok, detail + fmt("static(pi) %.3f <= dynamic(pi) %.3f", static_pi, dynamic_pi)};
}

Outcome slow_drift() {
  const ScenarioConfig c = config(DisorderSpec::slow_coin(), InitialCondition::symmetric(), 10, 0);
  const EnsembleSummary s = run_ensemble(c);
  const double hom = run_ensemble(config(DisorderSpec::homogeneous(), InitialCondition::symmetric(), 10, 1))
                         .final_variance()
                         .variance;
  const double var = s.final_variance().variance;
  const double edges = s.final_distribution().at(10) + s.final_distribution().at(-10);
  const double bound = 1.0 / static_cast<double>(c.disorder.theta_grid.size()) - 1e-9;
  return {var > hom && edges >= bound,
          fmt("var %.3f vs homogeneous %.3f; P(+10)+P(-10) %.4f vs %.4f", var, hom, edges, bound)};
}

Outcome structural_invariants() {
  constexpr int kSteps = 50;
  const std::vector<ScenarioConfig> scenarios{
      config(DisorderSpec::homogeneous(), InitialCondition::symmetric(), kSteps, 1),
      config(DisorderSpec::static_disorder(1.14 * kPi, 7), InitialCondition::horizontal(), kSteps, 300),
      config(DisorderSpec::dynamic_disorder(kPi, 7), InitialCondition::horizontal(), kSteps, 300),
      config(DisorderSpec::slow_coin(), InitialCondition::symmetric(), kSteps, 0),
  };
  double norm_drift = 0, symmetry = 0, locality = 0;
  bool parity = true, deterministic = true;

  auto check_walk = [&](const InitialCondition& init, const auto& coins, bool symmetric) {
    const int hw = required_half_width(init.x0, kSteps);
    const auto traj = evolve(initial_state(init.x0, init.c_h, init.c_v, hw), kSteps, coins);
    for (int k = 0; k <= kSteps; ++k) {
      norm_drift = std::max(norm_drift, std::abs(traj[k].norm() - 1.0));
      for (int x = -hw; x <= hw; ++x) {
        if (((x - init.x0 + k) % 2 + 2) % 2 != 0 && (traj[k].h(x) != Complex{} || traj[k].v(x) != Complex{})) {
          parity = false;
        }
        if (symmetric) symmetry = std::max(symmetry, std::abs(traj[k].probability(x) - traj[k].probability(-x)));
        if (k + 2 <= kSteps) {
          const auto [h, v] = two_step_coefficients(coins, k, x).apply(traj[k], x);
          locality = std::max({locality, std::abs(h - traj[k + 2].h(x)), std::abs(v - traj[k + 2].v(x))});
        }
      }
    }
  };

  for (const ScenarioConfig& c : scenarios) {
    const DisorderSpec& spec = c.disorder;
    const int hw = c.half_width();
    switch (spec.kind) {
      case DisorderKind::Homogeneous:
        check_walk(c.initial, coin_field_for(spec, spec.theta), true);
        break;
      case DisorderKind::Static:
        for (std::size_t r = 0; r < 20; ++r) {
          check_walk(c.initial, coin_field_for(spec, sample_static_pattern(spec, r, hw)), false);
        }
        break;
      case DisorderKind::Dynamic:
        for (std::size_t r = 0; r < 20; ++r) {
          check_walk(c.initial, coin_field_for(spec, sample_dynamic_pattern(spec, r, hw, kSteps)), false);
        }
        break;
      case DisorderKind::SlowCoin:
        for (double theta : spec.theta_grid) check_walk(c.initial, coin_field_for(spec, theta), true);
        break;
    }

    const EnsembleSummary one = run_ensemble(c, {1});
    for (unsigned w : {2u, 5u}) deterministic = deterministic && bitwise_equal(one, run_ensemble(c, {w}));
    for (std::size_t k = 0; k < one.steps.size(); ++k) {
      const Distribution& d = one.mean_distribution[k];
      norm_drift = std::max(norm_drift, std::abs(d.total() - 1.0));
      for (int x = d.x_min; x <= d.x_max(); ++x) {
        if (((x - c.initial.x0 + one.steps[k]) % 2 + 2) % 2 != 0 && d.at(x) != 0.0) parity = false;
      }
    }
  }
  const bool ok = norm_drift < 1e-10 && parity && symmetry < 1e-10 && locality < 1e-12 && deterministic;
  return {ok, fmt("norm drift %.2g, parity %s, symmetry %.2g, two-step %.2g, workers 1/2/5 %s", norm_drift,
                  parity ? "exact" : "broken", symmetry, locality, deterministic ? "bitwise equal" : "differ")};
}

Outcome fit_recovery() {
  double worst = 0;
  for (double rate : {0.3, 0.75, 1.4}) {
    Distribution d = Distribution::zeros(-20, 20);
    Distribution g = Distribution::zeros(-20, 20);
    for (int x = -20; x <= 20; ++x) {
      d.p_total[x + 20] = 0.2 * std::exp(-rate * std::abs(x));
      g.p_total[x + 20] = 0.2 * std::exp(-rate * 0.05 * x * x);
    }
    TailFitOptions opts;
    opts.floor = 0.0;
    worst = std::max(worst, std::abs(fit_tail(d, TailModel::ExponentialTail, opts).rate - rate));
    worst = std::max(worst, std::abs(fit_tail(g, TailModel::GaussianTail, opts).rate - rate * 0.05));
  }
  return {worst < 1e-9, fmt("max rate error %.3g", worst)};
}

}  // namespace

int main() {
  std::printf("qwalk acceptance suite\n");
  report("AC1", "oracle equivalence", 10, oracle_equivalence);
  report("AC2", "ballistic scaling", 1, ballistic_scaling);
  report("AC3", "classical limit", 60, classical_limit);
  report("AC4", "localization", 300, localization);
  report("AC5", "monotone transition", 300, monotone_transition);
  report("AC6", "slow-drift enhancement", 60, slow_drift);
  report("AC7", "structural invariants", 300, structural_invariants);
  report("AC8", "tail-fit self-consistency", 10, fit_recovery);
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
