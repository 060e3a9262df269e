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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ncmetro {

struct DvBoundRow {
  int n = 0;
  double qfi = 0.0;
  double bound = 0.0;  ///< N²(λ_max − λ_min)²
  double qfi_over_n2 = 0.0;
};

struct DvBoundReport {
  double spectral_spread = 0.0;
  std::vector<DvBoundRow> rows;
};

/// For each N, h = N exp(iNḡ h_g) h_λ exp(−iNḡ h_g) and QFI = 4 Var[h] on
/// `probe`, checked against N²·spread(h_λ)². Throws BoundViolationError if
/// any QFI exceeds its bound (beyond a 1e-9 relative rounding margin).
DvBoundReport dv_bound_check(const Eigen::MatrixXcd& h_g, const Eigen::MatrixXcd& h_lambda,
                             std::span<const int> n_list, double g_bar,
                             const Eigen::VectorXcd& probe);

/// Spin-s component matrix in the |s, m⟩ basis ordered m = s, s−1, …, −s.
/// axis is 'x', 'y' or 'z'. s = 1/2 gives σ/2.
Eigen::MatrixXcd spin_matrix(double spin, char axis);

/// (|v_max⟩ + |v_min⟩)/√2 over the extreme eigenvectors of a Hermitian h;
/// maximizes Var[h].
Eigen::VectorXcd extreme_superposition(const Eigen::MatrixXcd& h);

}  // namespace ncmetro
