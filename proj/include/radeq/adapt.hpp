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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "radeq/montecarlo.hpp"
#include "radeq/power.hpp"

namespace radeq {

struct ParetoPoint {
  double snr_loss_db = 0.0;
  PowerBreakdown power;
  int q = 0;
  int k = 0;
  int b_prime = 0;
  int u = 0;
};

struct SweepGrid {
  std::vector<int> adc_bits;  // kInfBits entries are skipped as candidates
  std::vector<int> eq_bits;
  std::vector<int> b_primes;
};

// Per-configuration search outcome, kept for all grid points (including the
// infeasible ones) so trend checks can look at raw minimum SNRs.
struct SweepEntry {
  int q = 0;
  int k = 0;
  int b_prime = 0;
  bool feasible = false;
  double min_snr_db = 0.0;
  double snr_loss_db = 0.0;
  double floor_ber = 1.0;
};

struct SweepResult {
  double reference_min_snr_db = 0.0;
  std::vector<SweepEntry> entries;       // one per finite grid point
  std::vector<ParetoPoint> candidates;   // feasible entries with power
};

// Evaluates the minimum SNR of every finite (q, k, B') grid point of `base`
// (modulation/channel/U fixed) against the shared ideal reference, using the
// same seed ensemble for every point. Infeasible points are excluded from
// candidates and logged to diag. Throws InfeasibleError when the reference
// itself or every grid point is infeasible.
SweepResult sweep(const SystemConfig& base, const SweepGrid& grid,
                  const SearchParams& search, const PowerConstants& constants,
                  std::uint64_t master_seed, std::ostream* diag = nullptr);

// Non-dominated subset in the (loss, power) plane, sorted by loss ascending
// (hence power strictly descending). Exact duplicates on both axes keep only
// the lexicographically smallest (q, k, B').
std::vector<ParetoPoint> pareto_envelope(std::vector<ParetoPoint> points);

struct BaselineSpec {
  int q = 0;
  int k = 0;
  double constraint_db = 0.1;
};

// Pure selection step: losses[i][j] is the SNR loss of pairs[i] = (q, k) at
// B' = B on scenario j (infinity when infeasible). Feasible pairs keep the
// worst-case loss strictly below constraint_db; among them the minimum
// total power at the worst-case (largest) U wins, ties lexicographic in
// (q, k). An infinite constraint admits every pair.
BaselineSpec select_baseline_from_losses(
    const std::vector<std::pair<int, int>>& pairs,
    const std::vector<std::vector<double>>& losses,
    const std::vector<int>& scenario_us, int b, double f_s,
    const PowerConstants& constants, double constraint_db);

// Full baseline selection over a worst-case scenario set. All scenarios must
// share B and f_s; candidate pairs are the cross product of qs and ks,
// evaluated at B' = B.
BaselineSpec select_baseline(const std::vector<SystemConfig>& scenarios,
                             const std::vector<int>& qs,
                             const std::vector<int>& ks, double constraint_db,
                             const SearchParams& search,
                             const PowerConstants& constants,
                             std::uint64_t master_seed,
                             std::ostream* diag = nullptr);

struct AdaptiveChoice {
  PowerBreakdown power;
  int q = 0;
  int k = 0;
  int b_prime = 0;
  double snr_loss_db = 0.0;
};

// Minimum-power envelope point with loss within the allowance; throws
// InfeasibleError when no envelope point qualifies.
AdaptiveChoice adaptive_power(const std::vector<ParetoPoint>& envelope,
                              double allowed_loss_db);

// Fixed worst-case architecture: ADC array at full B and q_base, equalizer
// scaled to the active UE load.
PowerBreakdown baseline_power(int u, const BaselineSpec& baseline, int b,
                              double f_s, const PowerConstants& constants);

}  // namespace radeq
