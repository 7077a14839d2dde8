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
//
// Per-antenna I/Q ADC pair: uniform midrise quantizer, MSE-optimal step size
// for Gaussian inputs, and the ADC input-variance computation.

#pragma once

#include "radeq/common.hpp"

namespace radeq {

inline constexpr int kMinAdcBits = 1;
inline constexpr int kMaxAdcBits = 8;

/// Midrise quantizer parameters for one real dimension (finite bit depth).
struct QuantizerSpec {
  int bits;     // q, per real dimension
  double step;  // step size, same units as the signal amplitude
};

/// Total complex variance seen by the busiest active antenna (signal + noise).
struct AdcInputStats {
  double sigma2_adc;
};

/// q-bit uniform midrise quantization of a real sample. Outputs lie on
/// +/-(step/2)(2m-1), m = 1..2^(q-1); inputs at or beyond the clipping point
/// step*2^(q-1) map to the outermost level.
double quantize_scalar(double y, const QuantizerSpec& spec);

/// MSE-optimal midrise step size for a unit-variance real Gaussian input,
/// computed once per bit depth by golden-section search on the closed-form
/// quantization MSE and cached. Supported bit depths: 1..8.
double optimal_unit_step(int bits);

/// MSE-optimal step size for a real Gaussian input with standard deviation
/// sigma; scale-equivariant in sigma.
double optimal_step_size(int bits, double sigma);

/// sigma2_adc = n0 + es * max_b sum_u sigma2_u |H_{b,u}|^2 over active rows.
AdcInputStats adc_input_variance(const CxMatrix& h_active,
                                 const RealVector& sigma2_u, double es,
                                 double n0);

/// Entrywise independent I/Q quantization of the active receive vector.
/// bits == kInfBits bypasses the ADCs (identity).
CxVector adc_array(const CxVector& y_active, int bits, double step);

}  // namespace radeq
