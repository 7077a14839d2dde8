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
#include <string>
#include <utility>
#include <vector>

#include "radeq/adapt.hpp"
#include "radeq/montecarlo.hpp"
#include "radeq/power.hpp"

namespace radeq {

// Resolved run description: the [section] key = value config file plus any
// command-line overrides. One modulation and one channel model per run.
struct RunConfig {
  SystemConfig system;
  SweepGrid sweep;              // defaults: q 1..8, k 1..6, B' = {B}
  std::vector<int> u_list;      // default {system.u}
  SearchParams search;
  PowerConstants power;
  std::uint64_t master_seed = 1;

  std::vector<double> ber_snr_db = {0.0, 5.0, 10.0};
  long long ber_min_bits = 10000;
  long ber_max_trials = 100000;

  std::vector<double> allowed_loss_db = {0.5};
  double constraint_db = 0.1;

  std::string out_dir = "out";
  bool verbose = false;
};

RunConfig parse_run_config_text(const std::string& text);
RunConfig load_run_config(const std::string& path);

// Grid-level range checks (q in 1..8 or inf, k in 1..6 or inf, B' <= B, ...)
// on top of the per-module validation.
void validate_run_config(const RunConfig& cfg);

// Flattened "section.key = value" pairs describing the run exactly; embedded
// as a '#' comment header in every CSV and as an object in JSON summaries.
// Excludes presentation-only knobs (out_dir, verbose, worker count), which
// must not affect results.
std::vector<std::pair<std::string, std::string>> resolved_config(
    const RunConfig& cfg);

}  // namespace radeq
