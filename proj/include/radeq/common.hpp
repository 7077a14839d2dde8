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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace radeq {

using cxd = std::complex<double>;
using CxMatrix = Eigen::MatrixXcd;
using CxVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Sentinel for an infinite (bypassed) resolution, used for both the ADC
/// bit depth q and the equalizer bit depth k.
inline constexpr int kInfBits = -1;

inline constexpr bool is_finite_bits(int bits) { return bits >= 1; }

// Error taxonomy. The CLI maps these onto distinct exit codes.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// q=inf / k=inf configurations have no power value.
class PowerModelError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DegenerateChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unusable (k, channel) combination; sweeps record these as failed.
class DegenerateEqualizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radeq
