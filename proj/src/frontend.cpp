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

#include "radeq/frontend.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <limits>

namespace radeq {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double y) { return kInvSqrt2Pi * std::exp(-0.5 * y * y); }

double normal_cdf(double y) {
  return 0.5 * std::erfc(-y * 0.70710678118654752440);
}

// E[(y - c)^2 * 1{a <= y < b}] for standard normal y, via the Gaussian
// moment identities. b may be +inf (pass infinity).
double truncated_sq_moment(double a, double b, double c) {
  double pa = normal_pdf(a);
  double pb = std::isinf(b) ? 0.0 : normal_pdf(b);
  double ca = normal_cdf(a);
  double cb = std::isinf(b) ? 1.0 : normal_cdf(b);
  double bpb = std::isinf(b) ? 0.0 : b * pb;
  return (1.0 + c * c) * (cb - ca) + a * pa - bpb - 2.0 * c * (pa - pb);
}

// Quantization MSE of the q-bit midrise quantizer with step delta for a
// unit-variance Gaussian input (granular cells plus overload tail).
double gaussian_mse(double delta, int bits) {
  const int levels_half = 1 << (bits - 1);
  double total = 0.0;
  for (int m = 1; m <= levels_half; ++m) {
    double a = (m - 1) * delta;
    double b = m * delta;
    double c = (m - 0.5) * delta;
    total += truncated_sq_moment(a, b, c);
  }
  double edge = levels_half * delta;
  total += truncated_sq_moment(
      edge, std::numeric_limits<double>::infinity(), edge - 0.5 * delta);
  return 2.0 * total;
}

double golden_section_min(double a, double b, int bits, double tol) {
  const double g = 0.61803398874989484820;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = gaussian_mse(c, bits);
  double fd = gaussian_mse(d, bits);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = gaussian_mse(c, bits);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = gaussian_mse(d, bits);
    }
  }
  return 0.5 * (a + b);
}

std::array<double, kMaxAdcBits> build_unit_step_table() {
  std::array<double, kMaxAdcBits> table{};
  for (int q = kMinAdcBits; q <= kMaxAdcBits; ++q) {
    table[q - 1] = golden_section_min(1e-3, 4.0, q, 1e-6);
  }
  return table;
}

}  // namespace

double quantize_scalar(double y, const QuantizerSpec& spec) {
  assert(spec.bits >= 1 && spec.step > 0.0);
  const double delta = spec.step;
  const double clip = delta * std::ldexp(1.0, spec.bits - 1);
  if (std::abs(y) >= clip) {
    double top = 0.5 * delta * (std::ldexp(1.0, spec.bits) - 1.0);
    return std::signbit(y) ? -top : top;
  }
  return delta * std::floor(y / delta) + 0.5 * delta;
}

double optimal_unit_step(int bits) {
  // Write-once at first use, read-only afterwards.
  static const std::array<double, kMaxAdcBits> table = build_unit_step_table();
  if (bits < kMinAdcBits || bits > kMaxAdcBits) {
    throw ConfigError("ADC bit depth q=" + std::to_string(bits) +
                      " outside supported range 1.." +
                      std::to_string(kMaxAdcBits));
  }
  return table[bits - 1];
}

double optimal_step_size(int bits, double sigma) {
  if (!(sigma > 0.0)) {
    throw ConfigError("quantizer input std must be positive");
  }
  return sigma * optimal_unit_step(bits);
}

AdcInputStats adc_input_variance(const CxMatrix& h_active,
                                 const RealVector& sigma2_u, double es,
                                 double n0) {
  if (h_active.rows() == 0 || h_active.cols() == 0) {
    throw ConfigError("adc_input_variance: empty active antenna set");
  }
  double max_power = 0.0;
  for (Eigen::Index b = 0; b < h_active.rows(); ++b) {
    double p = 0.0;
    for (Eigen::Index u = 0; u < h_active.cols(); ++u) {
      p += sigma2_u(u) * std::norm(h_active(b, u));
    }
    max_power = std::max(max_power, p);
  }
  return AdcInputStats{n0 + es * max_power};
}

CxVector adc_array(const CxVector& y_active, int bits, double step) {
  if (bits == kInfBits) {
    return y_active;
  }
  if (bits < kMinAdcBits || bits > kMaxAdcBits) {
    throw ConfigError("adc_array: unsupported bit depth");
  }
  if (!(step > 0.0)) {
    throw ConfigError("adc_array: step size must be positive");
  }
  const QuantizerSpec spec{bits, step};
  CxVector z(y_active.size());
  for (Eigen::Index i = 0; i < y_active.size(); ++i) {
    z(i) = cxd(quantize_scalar(y_active(i).real(), spec),
               quantize_scalar(y_active(i).imag(), spec));
  }
  return z;
}

}  // namespace radeq
