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

#include <string>
#include <vector>

#include "radeq/common.hpp"

namespace radeq {

enum class Modulation { kQpsk, kQam16 };

Modulation parse_modulation(const std::string& name);
std::string modulation_name(Modulation m);

// Unit-average-energy constellation with Gray labeling. points[label] is the
// transmit point whose bit pattern is `label`; nearest neighbors in the
// complex plane differ in exactly one bit.
struct Constellation {
  std::string name;
  int bits_per_symbol;
  std::vector<cxd> points;
};

const Constellation& get_constellation(Modulation m);

// Hard nearest-neighbor decision; returns the Gray bit label of the closest
// constellation point to s.
int detect_symbol(cxd s, const Constellation& c);

// Number of differing bits between two labels.
int bit_errors_between(int label_a, int label_b);

}  // namespace radeq
