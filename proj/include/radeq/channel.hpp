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
#include <vector>

#include "radeq/common.hpp"
#include "radeq/rng.hpp"

namespace radeq {

enum class ChannelKind { kLosUla, kIidRayleigh };

ChannelKind parse_channel_kind(const std::string& name);
std::string channel_kind_name(ChannelKind kind);

// Parametric substitutes for ray-traced channels: a single-path geometric
// LoS uniform linear array model with log-distance pathloss, and an
// i.i.d. Rayleigh model for rich non-LoS scattering.
struct ChannelModelSpec {
  ChannelKind kind = ChannelKind::kIidRayleigh;
  double sector_min_deg = -60.0;
  double sector_max_deg = 60.0;
  double min_separation_deg = 1.0;
  double distance_min_m = 10.0;
  double distance_max_m = 100.0;
  double pathloss_exponent = 2.0;
  double wavelength_spacing = 0.5;  // antenna pitch in carrier wavelengths
};

void validate(const ChannelModelSpec& spec);

// 1-based inclusive index interval of active antennas.
struct AntennaRange {
  int first = 1;
  int last = 1;
  int length() const { return last - first + 1; }
};

struct ChannelRealization {
  CxMatrix h;            // B x U complex gains
  RealVector sigma2_u;   // per-UE transmit power scale (power control)
  AntennaRange active;   // contiguous centered subset, defaults to full array
};

// ULA steering vector a_b(theta) = exp(j*2*pi*spacing*(b-1)*sin(theta)),
// b = 1..B; spacing 0.5 gives the lambda/2 array.
CxVector ula_steering(int b, double theta_rad, double spacing);

// Draws U angles (degrees) uniformly in the sector, rejection-sampled until
// all pairwise separations reach min_separation_deg (at most 10^4 attempts).
std::vector<double> draw_ula_angles(const ChannelModelSpec& spec, int u,
                                    Rng& rng);

// Draws one channel realization; sigma2_u is initialized to all-ones and the
// active range to the full array. Draw order is fixed (see implementation)
// so equal seeds give equal channels.
ChannelRealization generate_channel(const ChannelModelSpec& spec, int b, int u,
                                    Rng& rng);

// Sets sigma2_u = clamp(gbar/g_u, 1/2, 2) with g_u = ||h_u||^2 over the full
// array and gbar their geometric mean; the resulting effective-power spread
// max/min of sigma2_u*g_u is at most 4.
ChannelRealization apply_power_control(ChannelRealization ch);

// Centered contiguous subset: [floor((B-B')/2)+1, floor((B-B')/2)+B'].
AntennaRange select_antennas(int b, int b_prime);

// Rows of h restricted to the active range.
CxMatrix active_rows(const CxMatrix& h, AntennaRange range);

enum class CsiMode { kPerfect, kLsPilot };

CsiMode parse_csi_mode(const std::string& name);
std::string csi_mode_name(CsiMode mode);

// Channel estimate on the active rows. kPerfect returns the exact submatrix.
// kLsPilot transmits U orthogonal DFT pilot slots at per-UE power Es*sigma2_u
// and returns the least-squares solution; the per-entry error variance is
// N0 / (U * Es * sigma2_u). Pilot noise is drawn as a full BxU block before
// row selection so that estimates pair across different B' settings.
CxMatrix estimate_channel(const ChannelRealization& ch, CsiMode mode,
                          double es, double n0, Rng& rng);

// Ensemble-average received power per antenna, E[sum_u sigma2_u*||h_u||^2/B],
// estimated once from a dedicated deterministic calibration stream and
// cached. Dividing h by sqrt of this constant makes the per-run SNR equal
// Es/N0 on average without touching per-draw fading statistics.
inline constexpr int kCalibrationDraws = 1 << 17;
double calibration_constant(const ChannelModelSpec& spec, int b, int u,
                            std::uint64_t master_seed);

}  // namespace radeq
