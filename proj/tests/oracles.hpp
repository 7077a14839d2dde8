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
// Independent reference implementations ("oracles") used by the unit and
// acceptance tests. These deliberately avoid the library's own closed-form
// shortcuts: the quantizer MSE is integrated numerically and the Pareto
// filter is the brute-force O(n^2) dominance check.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "radeq/adapt.hpp"

namespace oracles {

// Quantizer distortion E[(Q(y) - y)^2] for unit-variance Gaussian y,
// integrated cell by cell with composite Simpson so every panel sees a
// smooth integrand. This uses only the midrise geometry (levels at
// +/-(step/2)(2m-1)), never the library quantizer, and is accurate to well
// below the 1e-4 comparison tolerance even after argmin amplification.
inline double quadrature_mse(int bits, double step) {
  const double inv_sqrt2pi = 0.3989422804014326779;
  auto cell = [&](double a, double b, double c, int n) {
    auto f = [&](double y) {
      const double e = y - c;
      return e * e * inv_sqrt2pi * std::exp(-0.5 * y * y);
    };
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i & 1) ? 4.0 : 2.0);
    return acc * h / 3.0;
  };
  const int half_levels = 1 << (bits - 1);
  const double clip = step * half_levels;
  double total = 0.0;
  for (int m = 0; m < half_levels; ++m) {
    const double a = m * step;
    total += cell(a, a + step, a + step / 2, 64);
  }
  // Saturation region [clip, inf): reconstruction pinned at the top level.
  const double hi = std::max(clip + 10.0, 14.0);
  total += cell(clip, hi, clip - step / 2, 2048);
  return 2.0 * total;  // symmetric in y
}

// Golden-section minimizer over [lo, hi]; independent of the library's.
template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

inline double quadrature_optimal_step(int bits) {
  return golden_min([bits](double d) { return quadrature_mse(bits, d); },
                    1e-3, 4.0, 1e-8);
}

inline bool lex_less(const radeq::ParetoPoint& a, const radeq::ParetoPoint& b) {
  if (a.q != b.q) return a.q < b.q;
  if (a.k != b.k) return a.k < b.k;
  return a.b_prime < b.b_prime;
}

// Brute-force non-dominated filter: keep point i iff no j dominates it and,
// among exact (loss, power) duplicates, it is the lexicographically smallest
// (q, k, b_prime). Output sorted by loss ascending.
inline std::vector<radeq::ParetoPoint> brute_force_envelope(
    const std::vector<radeq::ParetoPoint>& pts) {
  std::vector<radeq::ParetoPoint> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool kept = true;
    for (std::size_t j = 0; j < pts.size() && kept; ++j) {
      if (i == j) continue;
      const double li = pts[i].snr_loss_db, lj = pts[j].snr_loss_db;
      const double pi = pts[i].power.p_total_w, pj = pts[j].power.p_total_w;
      if (lj <= li && pj <= pi && (lj < li || pj < pi)) {
        kept = false;  // strictly dominated
      } else if (lj == li && pj == pi && lex_less(pts[j], pts[i])) {
        kept = false;  // duplicate, a lex-smaller twin exists
      }
    }
    if (kept) keep.push_back(pts[i]);
  }
  std::sort(keep.begin(), keep.end(),
            [](const radeq::ParetoPoint& a, const radeq::ParetoPoint& b) {
              if (a.snr_loss_db != b.snr_loss_db)
                return a.snr_loss_db < b.snr_loss_db;
              return lex_less(a, b);
            });
  return keep;
}

inline bool same_points(const std::vector<radeq::ParetoPoint>& a,
                        const std::vector<radeq::ParetoPoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].snr_loss_db != b[i].snr_loss_db ||
        a[i].power.p_total_w != b[i].power.p_total_w || a[i].q != b[i].q ||
        a[i].k != b[i].k || a[i].b_prime != b[i].b_prime) {
      return false;
    }
  }
  return true;
}

}  // namespace oracles
