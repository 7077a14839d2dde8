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

#include "radeq/equalizer.hpp"
#include "radeq/rng.hpp"

using namespace radeq;

namespace {

CxMatrix random_channel(int b, int u, uint64_t seed) {
  Rng rng(seed);
  CxMatrix h(b, u);
  for (int j = 0; j < u; ++j)
    for (int i = 0; i < b; ++i) h(i, j) = rng.cgauss();
  return h;
}

}  // namespace

TEST_CASE("single-UE L-MMSE row by hand") {
  CxMatrix h(2, 1);
  h << cxd(1, 0), cxd(1, 0);
  CxMatrix w = lmmse_matrix(h, 2.0);
  REQUIRE(w.rows() == 1);
  REQUIRE(w.cols() == 2);
  CHECK(w(0, 0).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(w(0, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(w(0, 0).imag()) < 1e-14);
}

TEST_CASE("zero regularization inverts a square channel") {
  CxMatrix h = random_channel(4, 4, 7);
  CxMatrix w = lmmse_matrix(h, 0.0);
  CxMatrix eye = w * h;
  CHECK((eye - CxMatrix::Identity(4, 4)).norm() < 1e-8);
}

TEST_CASE("L-MMSE satisfies its definition to 1e-10") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    CxMatrix h = random_channel(16, 4, seed);
    double rho = 0.05;
    CxMatrix w = lmmse_matrix(h, rho);
    CxMatrix gram = h.adjoint() * h + rho * CxMatrix::Identity(4, 4);
    CHECK((gram * w - h.adjoint()).norm() / h.adjoint().norm() < 1e-10);
  }
}

TEST_CASE("large regularization approaches the matched filter direction") {
  CxMatrix h = random_channel(8, 2, 11);
  double rho = 1e12;
  CxMatrix w = lmmse_matrix(h, rho);
  CHECK((rho * w - h.adjoint()).norm() / h.norm() < 1e-3);
}

TEST_CASE("negative regularization is rejected") {
  CxMatrix h = random_channel(4, 2, 1);
  CHECK_THROWS_AS(lmmse_matrix(h, -0.1), ConfigError);
}

TEST_CASE("rank-deficient zero-rho solve reports a numerical error") {
  CxMatrix h(4, 2);
  h.col(0) = random_channel(4, 1, 5);
  h.col(1) = h.col(0);  // exactly repeated column
  CHECK_THROWS_AS(lmmse_matrix(h, 0.0), NumericalError);
}

TEST_CASE("inf-tilde norm takes the max over Re/Im parts") {
  Eigen::RowVectorXcd row(2);
  row << cxd(0.9, 0.2), cxd(-0.4, 0.05);
  CHECK(inf_tilde_norm(row) == doctest::Approx(0.9).epsilon(1e-12));
  row << cxd(0.1, -1.3), cxd(0.2, 0.0);
  CHECK(inf_tilde_norm(row) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("two-bit row quantization worked example") {
  CxMatrix w(1, 2);
  w << cxd(0.9, 0.2), cxd(-0.4, 0.05);
  CxMatrix x = flmmse_quantize(w, 2);
  // Delta = 0.9 * 2^(1-2) = 0.45; 0.9 sits exactly on the clipping boundary.
  CHECK(x(0, 0).real() == doctest::Approx(0.675).epsilon(1e-12));
  CHECK(x(0, 0).imag() == doctest::Approx(0.225).epsilon(1e-12));
  CHECK(x(0, 1).real() == doctest::Approx(-0.225).epsilon(1e-12));
  CHECK(x(0, 1).imag() == doctest::Approx(0.225).epsilon(1e-12));
}

TEST_CASE("infinite k leaves the matrix untouched") {
  CxMatrix w = random_channel(3, 2, 21).transpose();
  CxMatrix x = flmmse_quantize(w, kInfBits);
  CHECK((x - w).norm() == 0.0);
}

TEST_CASE("row quantization commutes with power-of-two scaling") {
  CxMatrix w = random_channel(6, 3, 33).transpose();
  for (int k : {1, 2, 4}) {
    CxMatrix a = flmmse_quantize(4.0 * w, k);
    CxMatrix b = 4.0 * flmmse_quantize(w, k);
    CHECK((a - b).norm() == 0.0);
  }
}

TEST_CASE("quantized entries lie on the per-row grid") {
  CxMatrix w = random_channel(8, 4, 44).transpose();
  for (int k = 1; k <= 6; ++k) {
    CxMatrix x = flmmse_quantize(w, k);
    for (int u = 0; u < x.rows(); ++u) {
      double delta = inf_tilde_norm(w.row(u)) * std::ldexp(1.0, 1 - k);
      for (int b = 0; b < x.cols(); ++b) {
        for (double v : {x(u, b).real(), x(u, b).imag()}) {
          double m = (std::abs(v) / (delta / 2) + 1.0) / 2.0;
          CHECK(std::abs(m - std::round(m)) < 1e-9);
          CHECK(std::round(m) >= 1);
          CHECK(std::round(m) <= std::ldexp(1.0, k - 1));
        }
      }
    }
  }
}

TEST_CASE("per-component quantization error is bounded by the row norm") {
  CxMatrix w = random_channel(12, 4, 55).transpose();
  for (int k = 1; k <= 6; ++k) {
    CxMatrix x = flmmse_quantize(w, k);
    for (int u = 0; u < w.rows(); ++u) {
      double bound = inf_tilde_norm(w.row(u)) * std::ldexp(1.0, -k) + 1e-12;
      for (int b = 0; b < w.cols(); ++b) {
        CHECK(std::abs(x(u, b).real() - w(u, b).real()) <= bound);
        CHECK(std::abs(x(u, b).imag() - w(u, b).imag()) <= bound);
      }
    }
  }
}

TEST_CASE("all-zero rows cannot be quantized") {
  CxMatrix w = CxMatrix::Zero(2, 3);
  w(0, 0) = cxd(1.0, 0.0);
  CHECK_THROWS_AS(flmmse_quantize(w, 3), DegenerateEqualizerError);
  CHECK_THROWS_AS(flmmse_quantize(w, 0), ConfigError);
}

TEST_CASE("unbiasing scale is the inner-product reciprocal") {
  CxMatrix x(1, 1), h(1, 1);
  x << cxd(1, 0);
  h << cxd(2, 0);
  CxVector mu = unbiased_scaling(x, h);
  CHECK(mu(0).real() == doctest::Approx(0.5).epsilon(1e-12));

  h << cxd(1, 1);
  mu = unbiased_scaling(x, h);
  CHECK(mu(0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu(0).imag() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("zero-forcing is already unbiased") {
  CxMatrix h = random_channel(4, 4, 61);
  EqualizerBundle bundle = build_equalizer(h, 0.0, kInfBits);
  for (int u = 0; u < 4; ++u) {
    CHECK(std::abs(bundle.mu(u) - cxd(1.0, 0.0)) < 1e-8);
  }
  // V^H H = I to 1e-8.
  CxMatrix v = bundle.mu.asDiagonal() * bundle.x_h;
  CHECK((v * h - CxMatrix::Identity(4, 4)).norm() < 1e-8);
}

TEST_CASE("orthogonal equalizer row degenerates") {
  CxMatrix x(1, 2), h(2, 1);
  x << cxd(1, 0), cxd(0, 0);
  h << cxd(0, 0), cxd(1, 0);
  CHECK_THROWS_AS(unbiased_scaling(x, h), DegenerateEqualizerError);
}

TEST_CASE("bundles are unbiased for every finite and infinite k") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    CxMatrix h = random_channel(16, 4, seed);
    for (int k : {1, 2, 3, 4, 5, 6, kInfBits}) {
      EqualizerBundle bundle;
      try {
        bundle = build_equalizer(h, 0.02, k);
      } catch (const DegenerateEqualizerError&) {
        continue;  // flagged combination, excluded by contract
      }
      CxMatrix prod =
          bundle.mu.asDiagonal() * (bundle.x_h * h);
      for (int u = 0; u < 4; ++u) {
        CHECK(std::abs(prod(u, u) - cxd(1.0, 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("equalize applies mu and the finite-alphabet rows") {
  CxMatrix h = random_channel(8, 2, 71);
  EqualizerBundle bundle = build_equalizer(h, 0.1, 4);
  // z = column u of H -> s_hat_u = 1 by the unbiasedness identity.
  for (int u = 0; u < 2; ++u) {
    CxVector s = equalize(bundle, h.col(u));
    CHECK(std::abs(s(u) - cxd(1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("identity bundle passes z through") {
  EqualizerBundle bundle;
  bundle.w_h = CxMatrix::Identity(3, 3);
  bundle.x_h = CxMatrix::Identity(3, 3);
  bundle.mu = CxVector::Ones(3);
  bundle.eq_bits = kInfBits;
  CxVector z(3);
  z << cxd(1, 2), cxd(-3, 0.5), cxd(0, -1);
  CxVector s = equalize(bundle, z);
  CHECK((s - z).norm() == 0.0);
}

TEST_CASE("very fine quantization converges to the unquantized bundle") {
  CxMatrix h = random_channel(16, 4, 81);
  EqualizerBundle fine = build_equalizer(h, 0.05, 20);
  EqualizerBundle ideal = build_equalizer(h, 0.05, kInfBits);
  Rng rng(4);
  CxVector z(16);
  for (int i = 0; i < 16; ++i) z(i) = rng.cgauss();
  CxVector sf = equalize(fine, z);
  CxVector si = equalize(ideal, z);
  CHECK((sf - si).norm() / si.norm() < 1e-4);
}
