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

#include "radeq/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace radeq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxAngleAttempts = 10000;

double deg2rad(double deg) { return deg * (kPi / 180.0); }

}  // namespace

ChannelKind parse_channel_kind(const std::string& name) {
  if (name == "los-ula") return ChannelKind::kLosUla;
  if (name == "iid-rayleigh") return ChannelKind::kIidRayleigh;
  throw ConfigError("unknown channel model '" + name +
                    "' (expected los-ula|iid-rayleigh)");
}

std::string channel_kind_name(ChannelKind kind) {
  return kind == ChannelKind::kLosUla ? "los-ula" : "iid-rayleigh";
}

void validate(const ChannelModelSpec& spec) {
  if (spec.sector_min_deg >= spec.sector_max_deg) {
    throw ConfigError("channel sector must be a nonempty interval");
  }
  if (spec.sector_min_deg < -90.0 || spec.sector_max_deg > 90.0) {
    throw ConfigError("channel sector must lie within [-90, 90] degrees");
  }
  if (!(spec.min_separation_deg > 0.0)) {
    throw ConfigError("min_separation_deg must be positive");
  }
  if (!(spec.distance_min_m > 0.0) ||
      spec.distance_max_m < spec.distance_min_m) {
    throw ConfigError("distance range must be positive and ordered");
  }
  if (!(spec.pathloss_exponent >= 0.0)) {
    throw ConfigError("pathloss_exponent must be nonnegative");
  }
  if (!(spec.wavelength_spacing > 0.0)) {
    throw ConfigError("wavelength_spacing must be positive");
  }
}

CxVector ula_steering(int b, double theta_rad, double spacing) {
  CxVector a(b);
  const double phase_step = 2.0 * kPi * spacing * std::sin(theta_rad);
  for (int i = 0; i < b; ++i) {
    double phi = phase_step * i;
    a(i) = cxd(std::cos(phi), std::sin(phi));
  }
  return a;
}

std::vector<double> draw_ula_angles(const ChannelModelSpec& spec, int u,
                                    Rng& rng) {
  const double width = spec.sector_max_deg - spec.sector_min_deg;
  if (u * spec.min_separation_deg > width) {
    throw ConfigError("cannot place " + std::to_string(u) +
                      " UEs with min separation " +
                      std::to_string(spec.min_separation_deg) +
                      " deg in a " + std::to_string(width) + " deg sector");
  }
  std::vector<double> theta(u);
  for (int attempt = 0; attempt < kMaxAngleAttempts; ++attempt) {
    for (int i = 0; i < u; ++i) {
      theta[i] = spec.sector_min_deg + width * rng.uniform();
    }
    bool ok = true;
    for (int i = 0; i < u && ok; ++i) {
      for (int j = i + 1; j < u; ++j) {
        if (std::abs(theta[i] - theta[j]) < spec.min_separation_deg) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return theta;
  }
  throw ConfigError("angle rejection sampling failed after " +
                    std::to_string(kMaxAngleAttempts) + " attempts");
}

ChannelRealization generate_channel(const ChannelModelSpec& spec, int b, int u,
                                    Rng& rng) {
  validate(spec);
  if (u < 1 || b < 1) {
    throw ConfigError("channel dimensions must be at least 1x1");
  }
  ChannelRealization ch;
  ch.h.resize(b, u);
  ch.sigma2_u = RealVector::Ones(u);
  ch.active = AntennaRange{1, b};
  if (spec.kind == ChannelKind::kIidRayleigh) {
    // Column-major draw order: all of column u before column u+1.
    for (int col = 0; col < u; ++col) {
      for (int row = 0; row < b; ++row) {
        ch.h(row, col) = rng.cgauss();
      }
    }
    return ch;
  }
  // LoS ULA: one planar wavefront per UE, log-distance amplitude.
  if (b < u) {
    throw ConfigError("los-ula requires B >= U");
  }
  std::vector<double> theta = draw_ula_angles(spec, u, rng);
  for (int col = 0; col < u; ++col) {
    double d = spec.distance_min_m +
               (spec.distance_max_m - spec.distance_min_m) * rng.uniform();
    double gain = std::pow(spec.distance_min_m / d,
                           0.5 * spec.pathloss_exponent);
    ch.h.col(col) =
        gain * ula_steering(b, deg2rad(theta[col]), spec.wavelength_spacing);
  }
  return ch;
}

ChannelRealization apply_power_control(ChannelRealization ch) {
  const int u = static_cast<int>(ch.h.cols());
  RealVector g(u);
  double log_sum = 0.0;
  for (int col = 0; col < u; ++col) {
    g(col) = ch.h.col(col).squaredNorm();
    if (!(g(col) > 0.0)) {
      throw DegenerateChannelError("zero-norm channel column " +
                                   std::to_string(col));
    }
    log_sum += std::log(g(col));
  }
  const double gbar = std::exp(log_sum / u);
  for (int col = 0; col < u; ++col) {
    ch.sigma2_u(col) = std::clamp(gbar / g(col), 0.5, 2.0);
  }
  return ch;
}

AntennaRange select_antennas(int b, int b_prime) {
  if (b_prime < 1 || b_prime > b) {
    throw ConfigError("active antenna count must satisfy 1 <= B' <= B");
  }
  int offset = (b - b_prime) / 2;
  return AntennaRange{offset + 1, offset + b_prime};
}

CxMatrix active_rows(const CxMatrix& h, AntennaRange range) {
  return h.middleRows(range.first - 1, range.length());
}

CsiMode parse_csi_mode(const std::string& name) {
  if (name == "perfect") return CsiMode::kPerfect;
  if (name == "ls-pilot") return CsiMode::kLsPilot;
  throw ConfigError("unknown csi mode '" + name +
                    "' (expected perfect|ls-pilot)");
}

std::string csi_mode_name(CsiMode mode) {
  return mode == CsiMode::kPerfect ? "perfect" : "ls-pilot";
}

CxMatrix estimate_channel(const ChannelRealization& ch, CsiMode mode,
                          double es, double n0, Rng& rng) {
  const int b = static_cast<int>(ch.h.rows());
  const int u = static_cast<int>(ch.h.cols());
  CxMatrix h_act = active_rows(ch.h, ch.active);
  if (mode == CsiMode::kPerfect) {
    return h_act;
  }
  // U orthogonal DFT pilot slots: UE u sends sqrt(Es*sigma2_u) * q_u with
  // q_u(t) = exp(-j*2*pi*u*t/U) and Q*Q^H = U*I.
  CxMatrix q(u, u);
  for (int row = 0; row < u; ++row) {
    for (int t = 0; t < u; ++t) {
      double phi = -2.0 * kPi * static_cast<double>(row) *
                   static_cast<double>(t) / static_cast<double>(u);
      q(row, t) = cxd(std::cos(phi), std::sin(phi));
    }
  }
  // Noise for the full array, then row selection, so draws pair across B'.
  CxMatrix noise_full(b, u);
  for (int t = 0; t < u; ++t) {
    for (int row = 0; row < b; ++row) {
      noise_full(row, t) = rng.cgauss();
    }
  }
  RealVector amp(u);
  CxMatrix scaled_q = q;
  for (int row = 0; row < u; ++row) {
    amp(row) = std::sqrt(es * ch.sigma2_u(row));
    scaled_q.row(row) *= amp(row);
  }
  CxMatrix y =
      h_act * scaled_q + std::sqrt(n0) * active_rows(noise_full, ch.active);
  CxMatrix est = y * q.adjoint();
  for (int col = 0; col < u; ++col) {
    est.col(col) /= static_cast<double>(u) * amp(col);
  }
  return est;
}

double calibration_constant(const ChannelModelSpec& spec, int b, int u,
                            std::uint64_t master_seed) {
  static std::mutex cache_mutex;
  static std::map<std::string, double> cache;

  std::ostringstream key;
  key << channel_kind_name(spec.kind) << '|' << spec.sector_min_deg << '|'
      << spec.sector_max_deg << '|' << spec.min_separation_deg << '|'
      << spec.distance_min_m << '|' << spec.distance_max_m << '|'
      << spec.pathloss_exponent << '|' << spec.wavelength_spacing << '|' << b
      << '|' << u << '|' << master_seed;

  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }

  const std::uint64_t index =
      (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(u);
  Rng rng(stream_seed(master_seed, index, "calib"));
  double acc = 0.0;
  for (int draw = 0; draw < kCalibrationDraws; ++draw) {
    ChannelRealization ch = apply_power_control(generate_channel(spec, b, u, rng));
    double rx = 0.0;
    for (int col = 0; col < u; ++col) {
      rx += ch.sigma2_u(col) * ch.h.col(col).squaredNorm();
    }
    acc += rx / b;
  }
  double c = acc / kCalibrationDraws;

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key.str(), c);
  return c;
}

}  // namespace radeq
