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

#include "radeq/channel.hpp"
#include "radeq/common.hpp"
#include "radeq/constellation.hpp"

namespace radeq {

// One end-to-end uplink scenario. adc_bits/eq_bits may be kInfBits (ideal
// front end / unquantized equalizer); snr is supplied per call and mapped to
// N0 = Es / 10^(snr/10) thanks to the channel calibration convention.
struct SystemConfig {
  int b = 32;
  int b_prime = 32;
  int u = 4;
  int adc_bits = kInfBits;
  int eq_bits = kInfBits;
  double f_s = 2e9;
  double es = 1.0;
  Modulation modulation = Modulation::kQpsk;
  CsiMode csi = CsiMode::kPerfect;
  ChannelModelSpec channel;
};

void validate(const SystemConfig& cfg);

double noise_variance_for_snr(double es, double snr_db);

struct BerEstimate {
  double ber = 0.0;
  long long bit_errors = 0;
  long long bits_total = 0;
  double std_err = 0.0;
  long long trials = 0;
};

// Sequential-sampling policy for one BER probe. kPrecision runs until the
// binomial standard error reaches rel_precision * target_ber (with at least
// min_bits bits); kClassify additionally stops as soon as the estimate is
// clearly on one side of target_ber (classify_margin standard errors away).
// Both cap at max_trials channel uses.
struct ProbePolicy {
  enum class Mode { kPrecision, kClassify };
  Mode mode = Mode::kPrecision;
  double target_ber = 0.01;
  double rel_precision = 0.1;
  long long min_bits = 1000;
  long max_trials = 100000;
  double classify_margin = 5.0;
};

// Minimum-SNR search: coarse 2 dB walk over [snr_min_db, snr_max_db], then
// bisection of the first crossing bracket down to tol_db. The probe fields
// configure the per-probe ProbePolicy.
struct SearchParams {
  double target_ber = 0.01;
  double tol_db = 0.1;
  double snr_min_db = -10.0;
  double snr_max_db = 40.0;
  double grid_step_db = 2.0;
  double rel_precision = 0.1;
  long long min_bits = 1000;
  long max_trials = 100000;
};

struct MinSnrResult {
  bool feasible = false;
  double min_snr_db = 0.0;  // meaningful only when feasible
  double floor_ber = 1.0;   // lowest BER observed during the search
};

// Executes trials for one SystemConfig. Construction resolves the channel
// calibration constant (cached across runners); trial t always draws from
// the streams (master_seed, t, "channel"/"data"/"noise"/"pilot"), so results
// are a pure function of (config, snr, trial range, master_seed) and remain
// identical under any worker count. Trials whose equalizer degenerates are
// scored as BER 1/2 for that channel use.
class TrialRunner {
 public:
  TrialRunner(const SystemConfig& cfg, std::uint64_t master_seed);

  BerEstimate run(double snr_db, long n_trials) const;
  BerEstimate run_adaptive(double snr_db, const ProbePolicy& policy) const;

  int bits_per_trial() const { return bits_per_trial_; }
  double calibration_scale() const { return calib_scale_; }

 private:
  struct Counts {
    long long bit_errors = 0;
    long long bits = 0;
    long long degenerate = 0;
  };
  Counts run_range(double n0, long begin, long end) const;

  SystemConfig cfg_;
  std::uint64_t master_;
  double calib_scale_;
  const Constellation* constellation_;
  AntennaRange active_;
  int bits_per_trial_;
};

BerEstimate run_ber(const SystemConfig& cfg, double snr_db, long n_trials,
                    std::uint64_t master_seed);

// diag, when non-null, receives one '#'-prefixed line per probe plus
// warnings when the measured BER is not statistically decreasing in SNR.
MinSnrResult min_snr_for_target(const SystemConfig& cfg,
                                const SearchParams& search,
                                std::uint64_t master_seed,
                                std::ostream* diag = nullptr);

// Difference of minimum SNRs on the shared seed ensemble; throws
// InfeasibleError when either side cannot reach the target BER.
double snr_loss(const SystemConfig& cfg, const SystemConfig& reference,
                const SearchParams& search, std::uint64_t master_seed,
                std::ostream* diag = nullptr);

// The all-antennas, infinite-resolution variant of cfg (loss reference).
SystemConfig ideal_reference(const SystemConfig& cfg);

// Process-wide worker count for trial execution (0 = hardware concurrency).
// The count only affects wall-clock time, never results.
void set_worker_count(int workers);
int worker_count();

}  // namespace radeq
