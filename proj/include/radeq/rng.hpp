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
#include <random>
#include <string_view>

#include "radeq/common.hpp"

namespace radeq {

/// Stable substream seed derived from (master seed, stream index, purpose tag).
/// Trials obtain their own streams through this map, so Monte-Carlo results are
/// a pure function of (config, master seed) under any parallel schedule.
uint64_t stream_seed(uint64_t master, uint64_t index, std::string_view purpose);

/// Deterministic random stream. Uniform and Gaussian variates are generated
/// from the raw engine output (no std::*_distribution), so the sequence is
/// identical on every platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform over {0, ..., 2^nbits - 1}, nbits <= 32.
  uint32_t uniform_bits(int nbits) {
    return static_cast<uint32_t>(gen_() >> (64 - nbits));
  }

  /// Standard normal via Box-Muller.
  double gauss();

  /// Circularly-symmetric complex Gaussian with unit total variance.
  cxd cgauss() {
    const double s = 0.70710678118654752440;  // 1/sqrt(2)
    double re = gauss();
    double im = gauss();
    return cxd(s * re, s * im);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace radeq
