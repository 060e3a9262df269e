// Copyright 2026 The ncmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ncmetro/dv_bound.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"
#include "ncmetro/fock.hpp"

namespace ncmetro {

DvBoundReport dv_bound_check(const Eigen::MatrixXcd& h_g, const Eigen::MatrixXcd& h_lambda,
                             std::span<const int> n_list, double g_bar,
                             const Eigen::VectorXcd& probe) {
  const Eigen::Index d = h_lambda.rows();
  if (d < 2) throw ValidationError("DV bound needs dimension >= 2");
  if (h_g.rows() != d || h_g.cols() != d || h_lambda.cols() != d || probe.size() != d) {
    throw ValidationError("DV operators and probe must share one dimension");
  }
  if (!is_hermitian_matrix(h_g) || !is_hermitian_matrix(h_lambda)) {
    throw ValidationError("DV generators must be Hermitian");
  }
  if (std::abs(probe.norm() - 1.0) > 1e-10) throw ValidationError("DV probe is not normalized");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> spectrum(h_lambda, Eigen::EigenvaluesOnly);
  DvBoundReport report;
  report.spectral_spread = spectrum.eigenvalues().maxCoeff() - spectrum.eigenvalues().minCoeff();

  const Propagator aux(h_g);
  for (int n : n_list) {
    if (n < 1) throw ValidationError("DV bound needs N >= 1");
    // exp(iNḡ h_g) = U(−Nḡ) in the propagator's exp(−itH) convention.
    const Eigen::MatrixXcd u = aux.unitary(-n * g_bar);
    const Eigen::MatrixXcd h = static_cast<double>(n) * (u * h_lambda * u.adjoint());
    DvBoundRow row;
    row.n = n;
    row.qfi = 4.0 * variance(probe, h);
    row.bound = static_cast<double>(n) * n * report.spectral_spread * report.spectral_spread;
    row.qfi_over_n2 = row.qfi / (static_cast<double>(n) * n);
    if (row.qfi > row.bound * (1.0 + 1e-9) + 1e-12) {
      throw BoundViolationError(
          fmt::format("QFI {:.17g} exceeds N^2 spread^2 = {:.17g} at N = {}", row.qfi, row.bound, n));
    }
    report.rows.push_back(row);
  }
  return report;
}

Eigen::MatrixXcd spin_matrix(double spin, char axis) {
  const int d = static_cast<int>(std::lround(2.0 * spin)) + 1;
  if (d < 2 || std::abs(2.0 * spin + 1.0 - d) > 1e-12) {
    throw ValidationError("spin must be a positive multiple of 1/2");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = spin - k;
    if (axis == 'z') out(k, k) = m;
    if (k + 1 < d) {
      // ⟨m+1|S+|m⟩ for the pair (row k, column k+1).
      const double lower = m - 1.0;
      const double amp = std::sqrt(spin * (spin + 1.0) - lower * (lower + 1.0));
      if (axis == 'x') {
        out(k, k + 1) = 0.5 * amp;
        out(k + 1, k) = 0.5 * amp;
      } else if (axis == 'y') {
        out(k, k + 1) = Complex{0.0, -0.5 * amp};
        out(k + 1, k) = Complex{0.0, 0.5 * amp};
      }
    }
  }
  if (axis != 'x' && axis != 'y' && axis != 'z') throw ValidationError("spin axis must be x, y or z");
  return out;
}

Eigen::VectorXcd extreme_superposition(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::Index last = h.rows() - 1;
  return (eig.eigenvectors().col(0) + eig.eigenvectors().col(last)) / std::numbers::sqrt2;
}

}  // namespace ncmetro
