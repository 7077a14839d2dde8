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

// Equalizer-side quantization depth supported by the sweep grids; the module
// operations themselves accept any finite k >= 1.
inline constexpr int kMinEqBits = 1;
inline constexpr int kMaxEqBits = 6;

// Everything needed to apply s_hat = diag(mu) * X^H * z.
struct EqualizerBundle {
  CxMatrix w_h;   // U x B' linear MMSE rows w_u^H
  CxMatrix x_h;   // U x B' finite-alphabet rows x_u^H
  CxVector mu;    // per-UE unbiasing scale
  int eq_bits;    // k, or kInfBits for the unquantized equalizer
};

// W^H = (H~^H H~ + rho I)^{-1} H~^H with rho = N0/Es, via a factorized
// solve of the U x U regularized Gram system.
CxMatrix lmmse_matrix(const CxMatrix& h_tilde, double rho);

// Row-wise midrise quantization of W^H: row u uses step
// delta_u = ||w_u||_inf~ * 2^(1-k) where ||.||_inf~ is the max over entries
// of max(|Re|,|Im|). k = kInfBits returns W^H unchanged.
CxMatrix flmmse_quantize(const CxMatrix& w_h, int eq_bits);

// mu_u = (x_u^H h~_u)^{-1}; throws DegenerateEqualizerError when the inner
// product magnitude falls below 1e-12.
CxVector unbiased_scaling(const CxMatrix& x_h, const CxMatrix& h_tilde);

EqualizerBundle build_equalizer(const CxMatrix& h_tilde, double rho,
                                int eq_bits);

// s_hat_u = mu_u * (x_u^H z).
CxVector equalize(const EqualizerBundle& bundle, const CxVector& z);

// Max over entries of max(|Re|,|Im|) for one equalizer row.
double inf_tilde_norm(const Eigen::Ref<const Eigen::RowVectorXcd>& row);

}  // namespace radeq
