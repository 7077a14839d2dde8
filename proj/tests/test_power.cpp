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

#include "radeq/power.hpp"

using namespace radeq;

TEST_CASE("ADC power hits the published design point") {
  CHECK(std::abs(adc_power(7, 256, 2e9) - 9.2799) < 1e-3);
  CHECK(std::abs(adc_power(7, 256, 2e9) - 9.28) < 0.01);
}

TEST_CASE("ADC power minimal arithmetic") {
  PowerConstants unit;
  unit.adc_fom_j = 1.0;
  CHECK(adc_power(1, 1, 1.0, unit) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("ADC power is linear in the antenna count") {
  CHECK(adc_power(5, 64, 2e9) ==
        doctest::Approx(2.0 * adc_power(5, 32, 2e9)).epsilon(1e-12));
}

TEST_CASE("equalizer power hits the published design points") {
  CHECK(std::abs(eq_power(6, 7, 256, 16, 2e9) - 14.16) < 1e-6);
  CHECK(std::abs(eq_power(3, 7, 256, 16, 2e9) - 6.84) < 1e-6);
}

TEST_CASE("equalizer power is proportional to the UE count") {
  CHECK(eq_power(6, 7, 256, 8, 2e9) ==
        doctest::Approx(0.5 * eq_power(6, 7, 256, 16, 2e9)).epsilon(1e-12));
}

TEST_CASE("total power reproduces the paper-scale references") {
  PowerBreakdown ref = total_power(7, 6, 256, 16, 2e9);
  CHECK(std::abs(ref.p_total_w - 23.44) < 0.01);
  CHECK(ref.p_total_w ==
        doctest::Approx(ref.p_adc_w + ref.p_eq_w).epsilon(1e-12));

  PowerBreakdown large = total_power(7, 6, 256, 64, 2e9);
  CHECK(std::abs(large.p_total_w - 65.92) < 0.01);

  PowerBreakdown one_bit_eq = total_power(7, 1, 256, 16, 2e9);
  CHECK(std::abs(one_bit_eq.p_eq_w - 1.96) < 1e-6);
  CHECK(std::abs(one_bit_eq.p_adc_w - 9.28) < 0.01);
}

TEST_CASE("infinite resolutions have no power value") {
  CHECK_THROWS_AS(adc_power(kInfBits, 256, 2e9), PowerModelError);
  CHECK_THROWS_AS(eq_power(kInfBits, 7, 256, 16, 2e9), PowerModelError);
  CHECK_THROWS_AS(eq_power(6, kInfBits, 256, 16, 2e9), PowerModelError);
  CHECK_THROWS_AS(total_power(kInfBits, 6, 256, 16, 2e9), PowerModelError);
  CHECK_THROWS_AS(total_power(7, kInfBits, 256, 16, 2e9), PowerModelError);
}

TEST_CASE("non-positive bit depths and sizes are config errors") {
  CHECK_THROWS_AS(adc_power(0, 256, 2e9), ConfigError);
  CHECK_THROWS_AS(adc_power(3, 0, 2e9), ConfigError);
  CHECK_THROWS_AS(adc_power(3, 256, 0.0), ConfigError);
  CHECK_THROWS_AS(eq_power(0, 7, 256, 16, 2e9), ConfigError);
  CHECK_THROWS_AS(eq_power(6, 0, 256, 16, 2e9), ConfigError);
  CHECK_THROWS_AS(eq_power(6, 7, 256, 0, 2e9), ConfigError);
}

TEST_CASE("power is strictly monotone in every finite argument") {
  double base = total_power(4, 3, 128, 8, 2e9).p_total_w;
  CHECK(total_power(5, 3, 128, 8, 2e9).p_total_w > base);
  CHECK(total_power(4, 4, 128, 8, 2e9).p_total_w > base);
  CHECK(total_power(4, 3, 136, 8, 2e9).p_total_w > base);
  CHECK(total_power(4, 3, 128, 9, 2e9).p_total_w > base);
  CHECK(total_power(4, 3, 128, 8, 2.5e9).p_total_w > base);
}

TEST_CASE("ADC power follows the exact 2^q law") {
  for (int q = 1; q < 8; ++q) {
    CHECK(adc_power(q + 1, 64, 2e9) ==
          doctest::Approx(2.0 * adc_power(q, 64, 2e9)).epsilon(1e-12));
  }
}

TEST_CASE("custom constants flow through") {
  PowerConstants pc;
  pc.adc_fom_j = 100e-15;
  pc.eq_fit_slope_w = 2.0;
  pc.eq_fit_offset_w = 0.0;
  CHECK(adc_power(1, 1, 1.0, pc) == doctest::Approx(4e-13).epsilon(1e-12));
  CHECK(eq_power(2, 7, 256, 16, 2e9, pc) ==
        doctest::Approx(4.0).epsilon(1e-12));
}
