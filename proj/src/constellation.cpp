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

#include "radeq/constellation.hpp"

#include <bit>
#include <cmath>

namespace radeq {

namespace {

// 2-bit Gray code over the 4-PAM amplitudes {-3,-1,+1,+3}: adjacent
// amplitudes differ in one bit.
constexpr double kPam4[4] = {-3.0, -1.0, 1.0, 3.0};
constexpr int kGray2[4] = {0, 1, 3, 2};  // amplitude index -> 2-bit label

Constellation make_qpsk() {
  Constellation c;
  c.name = "qpsk";
  c.bits_per_symbol = 2;
  c.points.resize(4);
  const double a = 1.0 / std::sqrt(2.0);
  // label bit 1 -> I sign, bit 0 -> Q sign; 0 means +. Every nearest
  // neighbor (adjacent quadrant) differs in exactly one bit.
  for (int label = 0; label < 4; ++label) {
    double re = (label & 2) ? -a : a;
    double im = (label & 1) ? -a : a;
    c.points[label] = cxd(re, im);
  }
  return c;
}

Constellation make_qam16() {
  Constellation c;
  c.name = "16qam";
  c.bits_per_symbol = 4;
  c.points.resize(16);
  const double scale = 1.0 / std::sqrt(10.0);
  // label = (gray_I << 2) | gray_Q over the 4-PAM grid; per-axis Gray
  // labels make every horizontal/vertical neighbor differ in one bit.
  for (int i = 0; i < 4; ++i) {
    for (int q = 0; q < 4; ++q) {
      int label = (kGray2[i] << 2) | kGray2[q];
      c.points[label] = scale * cxd(kPam4[i], kPam4[q]);
    }
  }
  return c;
}

}  // namespace

Modulation parse_modulation(const std::string& name) {
  if (name == "qpsk") return Modulation::kQpsk;
  if (name == "16qam") return Modulation::kQam16;
  throw ConfigError("unknown modulation '" + name + "' (expected qpsk|16qam)");
}

std::string modulation_name(Modulation m) {
  return m == Modulation::kQpsk ? "qpsk" : "16qam";
}

const Constellation& get_constellation(Modulation m) {
  static const Constellation qpsk = make_qpsk();
  static const Constellation qam16 = make_qam16();
  return m == Modulation::kQpsk ? qpsk : qam16;
}

int detect_symbol(cxd s, const Constellation& c) {
  int best = 0;
  double best_d = std::norm(s - c.points[0]);
  for (int label = 1; label < static_cast<int>(c.points.size()); ++label) {
    double d = std::norm(s - c.points[label]);
    if (d < best_d) {
      best_d = d;
      best = label;
    }
  }
  return best;
}

int bit_errors_between(int label_a, int label_b) {
  return std::popcount(static_cast<unsigned>(label_a ^ label_b));
}

}  // namespace radeq
