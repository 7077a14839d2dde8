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

#include "radeq/common.hpp"

namespace radeq {

// Model constants: Walden figure of merit for the ADC array and the linear
// fit (slope, offset in k) for the spatial-equalizer power. Defaults are the
// published hardware anchors; they are recorded in every result file.
struct PowerConstants {
  double adc_fom_j = 70.8e-15;  // joules per conversion step
  double eq_fit_slope_w = 2.44;
  double eq_fit_offset_w = -0.48;
};

struct PowerBreakdown {
  double p_adc_w = 0.0;
  double p_eq_w = 0.0;
  double p_total_w = 0.0;
};

// P_ADC = FoM * 2^q * 2B' * f_s (one I and one Q converter per antenna).
// Infinite resolution has no power value and raises PowerModelError.
double adc_power(int adc_bits, int b_prime, double f_s,
                 const PowerConstants& constants = PowerConstants{});

// P_EQ = (slope*k + offset) * (q/7) * (B'/256) * (U/16) * (f_s / 2 GS/s)
// watts, anchored at the measured equalizer design point. Raises
// PowerModelError for infinite k or q.
double eq_power(int eq_bits, int adc_bits, int b_prime, int u, double f_s,
                const PowerConstants& constants = PowerConstants{});

PowerBreakdown total_power(int adc_bits, int eq_bits, int b_prime, int u,
                           double f_s,
                           const PowerConstants& constants = PowerConstants{});

}  // namespace radeq
