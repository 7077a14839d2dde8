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

#include "radeq/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <tuple>

namespace radeq {

SweepResult sweep(const SystemConfig& base, const SweepGrid& grid,
                  const SearchParams& search, const PowerConstants& constants,
                  std::uint64_t master_seed, std::ostream* diag) {
  SweepResult result;
  MinSnrResult ref =
      min_snr_for_target(ideal_reference(base), search, master_seed, diag);
  if (!ref.feasible) {
    throw InfeasibleError("sweep: ideal reference cannot reach the target "
                          "BER within the SNR search range");
  }
  result.reference_min_snr_db = ref.min_snr_db;

  for (int b_prime : grid.b_primes) {
    for (int q : grid.adc_bits) {
      if (q == kInfBits) continue;  // reference-only, no power value
      for (int k : grid.eq_bits) {
        if (k == kInfBits) continue;
        SystemConfig cfg = base;
        cfg.adc_bits = q;
        cfg.eq_bits = k;
        cfg.b_prime = b_prime;
        MinSnrResult point = min_snr_for_target(cfg, search, master_seed);
        SweepEntry entry;
        entry.q = q;
        entry.k = k;
        entry.b_prime = b_prime;
        entry.feasible = point.feasible;
        entry.floor_ber = point.floor_ber;
        if (point.feasible) {
          entry.min_snr_db = point.min_snr_db;
          entry.snr_loss_db = point.min_snr_db - ref.min_snr_db;
          ParetoPoint pp;
          pp.snr_loss_db = entry.snr_loss_db;
          pp.power =
              total_power(q, k, b_prime, base.u, base.f_s, constants);
          pp.q = q;
          pp.k = k;
          pp.b_prime = b_prime;
          pp.u = base.u;
          result.candidates.push_back(pp);
        } else if (diag) {
          (*diag) << "# excluded infeasible config q=" << q << " k=" << k
                  << " b_prime=" << b_prime << " floor_ber="
                  << point.floor_ber << '\n';
        }
        result.entries.push_back(entry);
      }
    }
  }
  if (result.candidates.empty()) {
    throw InfeasibleError("sweep: no feasible configuration in the grid");
  }
  return result;
}

std::vector<ParetoPoint> pareto_envelope(std::vector<ParetoPoint> points) {
  if (points.empty()) return points;
  std::sort(points.begin(), points.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) {
              return std::tie(a.snr_loss_db, a.power.p_total_w, a.q, a.k,
                              a.b_prime) <
                     std::tie(b.snr_loss_db, b.power.p_total_w, b.q, b.k,
                              b.b_prime);
            });
  std::vector<ParetoPoint> envelope;
  for (const ParetoPoint& p : points) {
    // After the sort, a point survives iff its power is strictly below every
    // earlier (lower-or-equal-loss) point; equal (loss, power) duplicates
    // lose to the lexicographically smaller config that came first.
    if (envelope.empty() || p.power.p_total_w < envelope.back().power.p_total_w) {
      envelope.push_back(p);
    }
  }
  return envelope;
}

BaselineSpec select_baseline_from_losses(
    const std::vector<std::pair<int, int>>& pairs,
    const std::vector<std::vector<double>>& losses,
    const std::vector<int>& scenario_us, int b, double f_s,
    const PowerConstants& constants, double constraint_db) {
  if (pairs.empty() || pairs.size() != losses.size()) {
    throw ConfigError("select_baseline: empty or mismatched loss table");
  }
  if (scenario_us.empty()) {
    throw ConfigError("select_baseline: empty scenario set");
  }
  const int worst_u = *std::max_element(scenario_us.begin(),
                                        scenario_us.end());
  bool found = false;
  BaselineSpec best;
  double best_power = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool feasible = true;
    if (!std::isinf(constraint_db)) {
      for (double loss : losses[i]) {
        if (!(loss < constraint_db)) {
          feasible = false;
          break;
        }
      }
    }
    if (!feasible) continue;
    auto [q, k] = pairs[i];
    double p = total_power(q, k, b, worst_u, f_s, constants).p_total_w;
    bool better = !found || p < best_power ||
                  (p == best_power &&
                   std::tie(q, k) < std::tie(best.q, best.k));
    if (better) {
      found = true;
      best_power = p;
      best.q = q;
      best.k = k;
    }
  }
  if (!found) {
    throw InfeasibleError("select_baseline: no (q, k) pair satisfies the "
                          "loss constraint on every scenario");
  }
  best.constraint_db = constraint_db;
  return best;
}

BaselineSpec select_baseline(const std::vector<SystemConfig>& scenarios,
                             const std::vector<int>& qs,
                             const std::vector<int>& ks, double constraint_db,
                             const SearchParams& search,
                             const PowerConstants& constants,
                             std::uint64_t master_seed, std::ostream* diag) {
  if (scenarios.empty()) {
    throw ConfigError("select_baseline: empty scenario set");
  }
  const int b = scenarios.front().b;
  const double f_s = scenarios.front().f_s;
  std::vector<int> scenario_us;
  for (const SystemConfig& sc : scenarios) {
    if (sc.b != b || sc.f_s != f_s) {
      throw ConfigError("select_baseline: scenarios must share B and f_s");
    }
    scenario_us.push_back(sc.u);
  }

  std::vector<std::pair<int, int>> pairs;
  for (int q : qs) {
    if (q == kInfBits) continue;
    for (int k : ks) {
      if (k == kInfBits) continue;
      pairs.emplace_back(q, k);
    }
  }
  if (pairs.empty()) {
    throw ConfigError("select_baseline: no finite (q, k) pairs");
  }

  std::vector<std::vector<double>> losses(
      pairs.size(), std::vector<double>(scenarios.size()));
  if (!std::isinf(constraint_db)) {
    for (std::size_t j = 0; j < scenarios.size(); ++j) {
      MinSnrResult ref = min_snr_for_target(ideal_reference(scenarios[j]),
                                            search, master_seed, diag);
      if (!ref.feasible) {
        throw InfeasibleError("select_baseline: ideal reference infeasible "
                              "on a scenario");
      }
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        SystemConfig cfg = scenarios[j];
        cfg.adc_bits = pairs[i].first;
        cfg.eq_bits = pairs[i].second;
        cfg.b_prime = b;
        MinSnrResult got = min_snr_for_target(cfg, search, master_seed);
        losses[i][j] = got.feasible
                           ? got.min_snr_db - ref.min_snr_db
                           : std::numeric_limits<double>::infinity();
      }
    }
  }
  return select_baseline_from_losses(pairs, losses, scenario_us, b, f_s,
                                     constants, constraint_db);
}

AdaptiveChoice adaptive_power(const std::vector<ParetoPoint>& envelope,
                              double allowed_loss_db) {
  const ParetoPoint* chosen = nullptr;
  for (const ParetoPoint& p : envelope) {
    if (p.snr_loss_db <= allowed_loss_db) {
      chosen = &p;  // envelope is loss-ascending, power-descending
    }
  }
  if (!chosen) {
    throw InfeasibleError("adaptive_power: no envelope point within the "
                          "allowed SNR loss");
  }
  AdaptiveChoice choice;
  choice.power = chosen->power;
  choice.q = chosen->q;
  choice.k = chosen->k;
  choice.b_prime = chosen->b_prime;
  choice.snr_loss_db = chosen->snr_loss_db;
  return choice;
}

PowerBreakdown baseline_power(int u, const BaselineSpec& baseline, int b,
                              double f_s, const PowerConstants& constants) {
  return total_power(baseline.q, baseline.k, b, u, f_s, constants);
}

}  // namespace radeq
