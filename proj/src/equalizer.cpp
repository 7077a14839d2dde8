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

#include "radeq/equalizer.hpp"

#include <cmath>

#include "radeq/frontend.hpp"

namespace radeq {

CxMatrix lmmse_matrix(const CxMatrix& h_tilde, double rho) {
  if (rho < 0.0) {
    throw ConfigError("lmmse_matrix: rho must be nonnegative");
  }
  const Eigen::Index u = h_tilde.cols();
  CxMatrix gram = h_tilde.adjoint() * h_tilde;
  gram.diagonal().array() += rho;
  CxMatrix rhs = h_tilde.adjoint();
  Eigen::LDLT<CxMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw NumericalError("lmmse_matrix: factorization of the regularized "
                         "Gram matrix failed");
  }
  // With rho = 0 a rank-deficient Gram matrix still yields a consistent
  // normal-equation system, so the solve residual alone cannot expose it;
  // inspect the factor pivots for (near-)zero entries as well.
  const Eigen::VectorXd d = ldlt.vectorD().real();
  const double d_max = d.cwiseAbs().maxCoeff();
  if (!(d_max > 0.0) || d.cwiseAbs().minCoeff() < 1e-13 * d_max ||
      d.minCoeff() <= 0.0) {
    throw NumericalError("lmmse_matrix: singular regularized Gram matrix");
  }
  CxMatrix w_h = ldlt.solve(rhs);
  double rhs_norm = rhs.norm();
  double residual = (gram * w_h - rhs).norm();
  if (!std::isfinite(residual) ||
      residual > 1e-6 * std::max(rhs_norm, 1.0) * std::sqrt(double(u))) {
    throw NumericalError("lmmse_matrix: singular regularized Gram matrix");
  }
  return w_h;
}

double inf_tilde_norm(const Eigen::Ref<const Eigen::RowVectorXcd>& row) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    m = std::max(m, std::max(std::abs(row(i).real()), std::abs(row(i).imag())));
  }
  return m;
}

CxMatrix flmmse_quantize(const CxMatrix& w_h, int eq_bits) {
  if (eq_bits == kInfBits) {
    return w_h;
  }
  if (eq_bits < 1) {
    throw ConfigError("equalizer bit depth must be >= 1");
  }
  CxMatrix x_h(w_h.rows(), w_h.cols());
  for (Eigen::Index row = 0; row < w_h.rows(); ++row) {
    double m = inf_tilde_norm(w_h.row(row));
    if (!(m > 0.0)) {
      throw DegenerateEqualizerError("all-zero equalizer row " +
                                     std::to_string(row));
    }
    const QuantizerSpec spec{eq_bits, m * std::ldexp(1.0, 1 - eq_bits)};
    for (Eigen::Index col = 0; col < w_h.cols(); ++col) {
      x_h(row, col) = cxd(quantize_scalar(w_h(row, col).real(), spec),
                          quantize_scalar(w_h(row, col).imag(), spec));
    }
  }
  return x_h;
}

CxVector unbiased_scaling(const CxMatrix& x_h, const CxMatrix& h_tilde) {
  const Eigen::Index u = x_h.rows();
  CxVector mu(u);
  for (Eigen::Index row = 0; row < u; ++row) {
    cxd dot = x_h.row(row) * h_tilde.col(row);
    if (std::abs(dot) < 1e-12) {
      throw DegenerateEqualizerError(
          "unbiased scaling undefined: |x_u^H h_u| < 1e-12 for UE " +
          std::to_string(row));
    }
    mu(row) = 1.0 / dot;
  }
  return mu;
}

EqualizerBundle build_equalizer(const CxMatrix& h_tilde, double rho,
                                int eq_bits) {
  EqualizerBundle bundle;
  bundle.w_h = lmmse_matrix(h_tilde, rho);
  bundle.x_h = flmmse_quantize(bundle.w_h, eq_bits);
  bundle.mu = unbiased_scaling(bundle.x_h, h_tilde);
  bundle.eq_bits = eq_bits;
  return bundle;
}

CxVector equalize(const EqualizerBundle& bundle, const CxVector& z) {
  CxVector s_hat = bundle.x_h * z;
  s_hat.array() *= bundle.mu.array();
  return s_hat;
}

}  // namespace radeq
