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

#include "radeq/power.hpp"

#include <cmath>

namespace radeq {

namespace {

void check_common(int b_prime, double f_s) {
  if (b_prime < 1) {
    throw ConfigError("power model: B' must be >= 1");
  }
  if (!(f_s > 0.0)) {
    throw ConfigError("power model: sampling rate must be positive");
  }
}

}  // namespace

double adc_power(int adc_bits, int b_prime, double f_s,
                 const PowerConstants& constants) {
  if (adc_bits == kInfBits) {
    throw PowerModelError(
        "ADC power is undefined for infinite resolution (reference-only "
        "configuration)");
  }
  if (adc_bits < 1) {
    throw ConfigError("power model: q must be >= 1");
  }
  check_common(b_prime, f_s);
  return constants.adc_fom_j * std::ldexp(1.0, adc_bits) * 2.0 * b_prime * f_s;
}

double eq_power(int eq_bits, int adc_bits, int b_prime, int u, double f_s,
                const PowerConstants& constants) {
  if (eq_bits == kInfBits || adc_bits == kInfBits) {
    throw PowerModelError(
        "equalizer power is undefined for infinite resolution "
        "(reference-only configuration)");
  }
  if (eq_bits < 1 || adc_bits < 1) {
    throw ConfigError("power model: q and k must be >= 1");
  }
  if (u < 1) {
    throw ConfigError("power model: U must be >= 1");
  }
  check_common(b_prime, f_s);
  double fit = constants.eq_fit_slope_w * eq_bits + constants.eq_fit_offset_w;
  return fit * (adc_bits / 7.0) * (b_prime / 256.0) * (u / 16.0) *
         (f_s / 2e9);
}

PowerBreakdown total_power(int adc_bits, int eq_bits, int b_prime, int u,
                           double f_s, const PowerConstants& constants) {
  PowerBreakdown p;
  p.p_adc_w = adc_power(adc_bits, b_prime, f_s, constants);
  p.p_eq_w = eq_power(eq_bits, adc_bits, b_prime, u, f_s, constants);
  p.p_total_w = p.p_adc_w + p.p_eq_w;
  return p;
}

}  // namespace radeq
