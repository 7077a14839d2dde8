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

#include "radeq/config.hpp"

namespace radeq {

// The four workflows behind the CLI. Each writes its result files into
// cfg.out_dir (created if missing) and throws the module error types on
// failure; the CLI maps those to distinct exit codes.

// power.csv: total power over the (q, k, B', U) grid; infinite-resolution
// rows carry "n/a" power cells.
void cmd_power(const RunConfig& cfg);

// ber.csv: (snr_db, ber, std_err, trials) at the configured SNR points for
// the single [system] configuration.
void cmd_ber(const RunConfig& cfg);

// pareto.csv + pareto.json: per-U sweep over the grid, Pareto envelope rows
// sorted by SNR loss.
void cmd_pareto(const RunConfig& cfg);

// compare.csv + compare.json: worst-case baseline vs per-U adaptive
// configuration, one block per allowed SNR loss.
void cmd_compare(const RunConfig& cfg);

}  // namespace radeq
