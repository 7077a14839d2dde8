// SPDX-License-Identifier: Apache-2.0
//
// radeq - link-level simulator and optimizer for resolution-adaptive
// quantized massive MU-MIMO uplink equalization
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "radeq/adapt.hpp"
#include "radeq/rng.hpp"

using namespace radeq;

namespace {

ParetoPoint make_point(double loss, double power, int q = 1, int k = 1,
                       int b_prime = 1) {
  ParetoPoint p;
  p.snr_loss_db = loss;
  p.power.p_total_w = power;
  p.power.p_adc_w = power / 2;
  p.power.p_eq_w = power / 2;
  p.q = q;
  p.k = k;
  p.b_prime = b_prime;
  p.u = 4;
  return p;
}

}  // namespace

TEST_CASE("envelope of the four-point example") {
  std::vector<ParetoPoint> pts = {
      make_point(1.0, 10, 2, 1, 8), make_point(0.5, 20, 3, 2, 8),
      make_point(1.2, 9, 4, 3, 8), make_point(0.8, 25, 5, 4, 8)};
  std::vector<ParetoPoint> env = pareto_envelope(pts);
  REQUIRE(env.size() == 3);
  CHECK(env[0].snr_loss_db == 0.5);
  CHECK(env[0].power.p_total_w == 20);
  CHECK(env[1].snr_loss_db == 1.0);
  CHECK(env[1].power.p_total_w == 10);
  CHECK(env[2].snr_loss_db == 1.2);
  CHECK(env[2].power.p_total_w == 9);
}

TEST_CASE("a single point is its own envelope") {
  std::vector<ParetoPoint> env = pareto_envelope({make_point(0.7, 3.0)});
  REQUIRE(env.size() == 1);
  CHECK(env[0].snr_loss_db == 0.7);
}

TEST_CASE("duplicated points are kept once, lex-smallest config") {
  std::vector<ParetoPoint> pts = {make_point(0.5, 5, 3, 2, 16),
                                  make_point(0.5, 5, 2, 4, 16),
                                  make_point(0.5, 5, 2, 4, 8)};
  std::vector<ParetoPoint> env = pareto_envelope(pts);
  REQUIRE(env.size() == 1);
  CHECK(env[0].q == 2);
  CHECK(env[0].k == 4);
  CHECK(env[0].b_prime == 8);
}

TEST_CASE("envelope power is strictly decreasing along ascending loss") {
  Rng rng(17);
  std::vector<ParetoPoint> pts;
  for (int i = 0; i < 200; ++i) {
    pts.push_back(make_point(std::round(rng.uniform() * 50) / 10.0,
                             std::round(rng.uniform() * 90) + 1,
                             1 + int(rng.uniform_bits(3)),
                             1 + int(rng.uniform_bits(2)),
                             8 + int(rng.uniform_bits(3))));
  }
  std::vector<ParetoPoint> env = pareto_envelope(pts);
  for (std::size_t i = 1; i < env.size(); ++i) {
    CHECK(env[i].snr_loss_db > env[i - 1].snr_loss_db);
    CHECK(env[i].power.p_total_w < env[i - 1].power.p_total_w);
  }
}

TEST_CASE("envelope equals the brute-force dominance filter") {
  Rng rng(91);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 1 + int(rng.uniform_bits(6));
    std::vector<ParetoPoint> pts;
    for (int i = 0; i < n; ++i) {
      // Coarse value grids force plenty of exact ties.
      pts.push_back(make_point(std::round(rng.uniform() * 20) / 4.0,
                               1.0 + std::round(rng.uniform() * 12),
                               1 + int(rng.uniform_bits(3)),
                               1 + int(rng.uniform_bits(3)),
                               1 + int(rng.uniform_bits(4))));
    }
    std::vector<ParetoPoint> fast = pareto_envelope(pts);
    std::vector<ParetoPoint> slow = oracles::brute_force_envelope(pts);
    CHECK(oracles::same_points(fast, slow));
  }
}

TEST_CASE("baseline selection prefers the cheapest feasible pair") {
  std::vector<std::pair<int, int>> pairs = {{1, 1}, {5, 4}, {7, 6}};
  // Losses per pair on a single scenario.
  std::vector<std::vector<double>> losses = {{3.0}, {0.04}, {0.02}};
  std::vector<int> us = {16};
  BaselineSpec spec = select_baseline_from_losses(pairs, losses, us, 256,
                                                  2e9, PowerConstants{}, 0.1);
  // Both (5,4) and (7,6) are feasible; (5,4) burns less power.
  CHECK(spec.q == 5);
  CHECK(spec.k == 4);
}

TEST_CASE("an infinite constraint admits the minimum-power pair") {
  std::vector<std::pair<int, int>> pairs;
  for (int q = 1; q <= 8; ++q)
    for (int k = 1; k <= 6; ++k) pairs.push_back({q, k});
  std::vector<std::vector<double>> losses(
      pairs.size(), std::vector<double>{std::numeric_limits<double>::infinity()});
  std::vector<int> us = {64};
  BaselineSpec spec = select_baseline_from_losses(
      pairs, losses, us, 256, 2e9, PowerConstants{},
      std::numeric_limits<double>::infinity());
  CHECK(spec.q == 1);
  CHECK(spec.k == 1);
}

TEST_CASE("the constraint is strict and binds on the worst scenario") {
  std::vector<std::pair<int, int>> pairs = {{2, 2}};
  std::vector<std::vector<double>> at_limit = {{0.1}};
  std::vector<int> us = {8};
  CHECK_THROWS_AS(select_baseline_from_losses(pairs, at_limit, us, 32, 2e9,
                                              PowerConstants{}, 0.1),
                  InfeasibleError);
  std::vector<std::vector<double>> below = {{0.0999}};
  BaselineSpec ok = select_baseline_from_losses(pairs, below, us, 32, 2e9,
                                                PowerConstants{}, 0.1);
  CHECK(ok.q == 2);
  CHECK(ok.k == 2);
}

TEST_CASE("worst-case scenario drives the power ranking") {
  // Power at the largest U decides; scenario order must not matter.
  std::vector<std::pair<int, int>> pairs = {{3, 3}, {4, 2}};
  std::vector<std::vector<double>> losses = {{0.01, 0.02}, {0.01, 0.02}};
  std::vector<int> us = {8, 2};
  BaselineSpec spec = select_baseline_from_losses(pairs, losses, us, 32, 2e9,
                                                  PowerConstants{}, 0.1);
  double p33 = total_power(3, 3, 32, 8, 2e9).p_total_w;
  double p42 = total_power(4, 2, 32, 8, 2e9).p_total_w;
  CHECK(((spec.q == 3 && spec.k == 3) == (p33 <= p42)));
}

TEST_CASE("adaptive selection walks the envelope") {
  std::vector<ParetoPoint> env = pareto_envelope(
      {make_point(1.0, 10, 2, 1, 8), make_point(0.5, 20, 3, 2, 8),
       make_point(1.2, 9, 4, 3, 8), make_point(0.8, 25, 5, 4, 8)});
  AdaptiveChoice at_max = adaptive_power(env, 1.2);
  CHECK(at_max.power.p_total_w == 9);
  AdaptiveChoice beyond = adaptive_power(env, 99.0);
  CHECK(beyond.power.p_total_w == 9);
  AdaptiveChoice mid = adaptive_power(env, 1.1);
  CHECK(mid.power.p_total_w == 10);
  AdaptiveChoice tight = adaptive_power(env, 0.5);
  CHECK(tight.power.p_total_w == 20);
  CHECK_THROWS_AS(adaptive_power(env, 0.4), InfeasibleError);
  CHECK_THROWS_AS(adaptive_power({}, 1.0), InfeasibleError);
}

TEST_CASE("baseline power follows the fixed-architecture rule") {
  BaselineSpec base{7, 6, 0.1};
  PowerBreakdown p16 = baseline_power(16, base, 256, 2e9, PowerConstants{});
  CHECK(std::abs(p16.p_total_w - 23.44) < 0.01);
  PowerBreakdown p8 = baseline_power(8, base, 256, 2e9, PowerConstants{});
  CHECK(p8.p_adc_w == doctest::Approx(p16.p_adc_w).epsilon(1e-12));
  CHECK(p8.p_eq_w == doctest::Approx(p16.p_eq_w / 2).epsilon(1e-12));
  PowerBreakdown p64 = baseline_power(64, base, 256, 2e9, PowerConstants{});
  CHECK(std::abs(p64.p_total_w - 65.92) < 0.01);
}

TEST_CASE("a one-config sweep yields one consistent candidate") {
  SystemConfig base;
  base.b = 4;
  base.b_prime = 4;
  base.u = 2;
  base.channel.kind = ChannelKind::kIidRayleigh;
  SweepGrid grid;
  grid.adc_bits = {4, kInfBits};  // the infinite entry must be skipped
  grid.eq_bits = {4};
  grid.b_primes = {4};
  SearchParams search;
  search.min_bits = 1000;
  search.max_trials = 20000;
  SweepResult res = sweep(base, grid, search, PowerConstants{}, 3);
  REQUIRE(res.entries.size() == 1);
  REQUIRE(res.candidates.size() == 1);
  const ParetoPoint& p = res.candidates[0];
  CHECK(p.q == 4);
  CHECK(p.k == 4);
  CHECK(p.b_prime == 4);
  CHECK(p.u == 2);
  PowerBreakdown expect = total_power(4, 4, 4, 2, 2e9);
  CHECK(p.power.p_total_w == doctest::Approx(expect.p_total_w));
  CHECK(p.snr_loss_db >= -2.0 * search.tol_db);
  CHECK(res.entries[0].feasible);
  CHECK(res.entries[0].min_snr_db ==
        doctest::Approx(res.reference_min_snr_db + p.snr_loss_db));
}

TEST_CASE("sweeps with no feasible grid point raise an error") {
  SystemConfig base;
  base.b = 4;
  base.b_prime = 4;
  base.u = 4;
  base.modulation = Modulation::kQam16;
  SweepGrid grid;
  grid.adc_bits = {1};
  grid.eq_bits = {1};
  grid.b_primes = {4};
  SearchParams search;
  search.min_bits = 500;
  search.max_trials = 2000;
  CHECK_THROWS_AS(sweep(base, grid, search, PowerConstants{}, 3),
                  InfeasibleError);
}

TEST_CASE("full select_baseline runs on a tiny scenario set") {
  SystemConfig s1;
  s1.b = 4;
  s1.b_prime = 4;
  s1.u = 1;
  s1.channel.kind = ChannelKind::kIidRayleigh;
  SystemConfig s2 = s1;
  s2.u = 2;
  SearchParams search;
  search.min_bits = 1000;
  search.max_trials = 20000;
  // A permissive constraint keeps the desk-scale run cheap while still
  // exercising the loss computation for every candidate pair.
  BaselineSpec spec = select_baseline({s1, s2}, {6, 8}, {5, 6}, 6.0, search,
                                      PowerConstants{}, 3);
  // Every pair is comfortably feasible at 6 dB, so the power-minimal pair
  // over the grid wins outright.
  CHECK(spec.q == 6);
  CHECK(spec.k == 5);
  CHECK(spec.constraint_db == 6.0);
}

TEST_CASE("select_baseline skips simulation when unconstrained") {
  SystemConfig s1;
  s1.b = 8;
  s1.b_prime = 8;
  s1.u = 2;
  SearchParams search;
  BaselineSpec spec = select_baseline(
      {s1}, {1, 2, 3, 4, 5, 6, 7, 8}, {1, 2, 3, 4, 5, 6},
      std::numeric_limits<double>::infinity(), search, PowerConstants{}, 1);
  CHECK(spec.q == 1);
  CHECK(spec.k == 1);
}

TEST_CASE("scenario sets must agree on array size and sampling rate") {
  SystemConfig s1;
  s1.b = 8;
  s1.b_prime = 8;
  SystemConfig s2 = s1;
  s2.b = 16;
  s2.b_prime = 16;
  SearchParams search;
  CHECK_THROWS_AS(select_baseline({s1, s2}, {4}, {4}, 0.1, search,
                                  PowerConstants{}, 1),
                  ConfigError);
  CHECK_THROWS_AS(select_baseline(std::vector<SystemConfig>{}, {4}, {4}, 0.1,
                                  search, PowerConstants{}, 1),
                  ConfigError);
}
