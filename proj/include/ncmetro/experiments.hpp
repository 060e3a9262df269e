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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncmetro/fock.hpp"
#include "ncmetro/ladder_polynomial.hpp"
#include "ncmetro/protocol.hpp"
#include "ncmetro/switch.hpp"

namespace ncmetro {

struct ScanRow {
  int key = 0;  ///< N or K
  std::vector<double> values;
};

/// Tabular scan output. Rows are sorted by `key`; `columns` names the
/// entries of every row's `values` in order.
struct ScanResult {
  std::string label;
  std::string key_column;
  std::vector<std::string> columns;
  std::vector<ScanRow> rows;
  /// Ordered key/value pairs sufficient to re-run the scan.
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Index of `name` in `columns`; throws ValidationError if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;
  std::vector<double> keys() const;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double window_min = 0.0;
  double window_max = 0.0;
  int points = 0;
};

struct FitWindow {
  double min;
  double max;
};

/// OLS of ln y on ln x over the points with x inside `window`. Needs at
/// least three points and a non-degenerate window; non-positive values
/// throw DomainError.
FitResult fit_loglog_slope(std::span<const std::pair<double, double>> points,
                           std::optional<FitWindow> window = std::nullopt);

/// OLS of ln y on x; the slope is the exponential rate.
FitResult fit_semilog_slope(std::span<const std::pair<double, double>> points,
                            std::optional<FitWindow> window = std::nullopt);

/// Plain OLS of y on x.
FitResult fit_line(std::span<const std::pair<double, double>> points,
                   std::optional<FitWindow> window = std::nullopt);

std::vector<std::pair<double, double>> zip(std::span<const double> x, std::span<const double> y);

/// Integers lo..hi inclusive.
std::vector<int> int_range(int lo, int hi);

/// log10(N^{2(1+K)}/(K!)²) per N, one column `logcoef_K<k>` per K.
ScanResult fig2a_scan(std::span<const int> k_list, std::span<const int> n_list);

/// The same coefficient against K = 0..k_max, one column `logcoef_N<n>`
/// per N; metadata `argmax_N<n>` lists the k_peak set.
ScanResult fig2b_scan(std::span<const int> n_list, int k_max);

struct Fig3Options {
  double xi_bar = 0.1;
  Complex alpha{0.3, 0.0};
  double theta = 0.7853981633974483;  // π/4
  int fock_dim = kDefaultFockDim;
  /// Fock column is evaluated for N ≤ fock_max_n and NaN above.
  int fock_max_n = 64;
  double step = kDefaultFiniteDifferenceStep;
};

/// Squeezing protocol QFI/CFI per N. Columns: qfi_closed, qfi_gaussian,
/// qfi_state, qfi_fock, cfi, ratio, ratio_pi4, fock_trusted.
ScanResult fig3_scan(std::span<const int> n_list, const Fig3Options& options = {});

struct ScalingStudy {
  ScanResult scan;
  FitResult fit;
};

/// Shearing protocol; QFI = 4 Var[ĥ] from the local generator, fitted log-log.
/// Requires max N ≥ 8 min N.
ScalingStudy example1_scaling(std::span<const int> n_list, double s_bar,
                              const ProbeDescriptor& probe = VacuumProbe{});

/// (X̂, P̂) pair in definite order; QFI fitted log-log.
ScalingStudy constant_commutator_scaling(std::span<const int> n_list, double g_bar,
                                         const ProbeDescriptor& probe = VacuumProbe{});

/// Squeezing protocol; fits ln(F/N²) against N, so the slope estimates 2ξ̄.
ScalingStudy squeezing_exponent(std::span<const int> n_list, double xi_bar,
                                const ProbeDescriptor& probe = CoherentProbe{{0.3, 0.0}});

struct SwitchOptions {
  int dim = kDefaultFockDim;
  CausalOrder order = CausalOrder::Superposed;
  double step = kDefaultFiniteDifferenceStep;
};

/// SWITCH QFI with respect to x on the vacuum. Columns: qfi_control,
/// qfi_joint, branch_phase, expected_phase. The fit uses qfi_control in
/// superposed order and qfi_joint in definite order (the control carries
/// no information there). p = 0 leaves the control blind and throws
/// ValidationError.
ScalingStudy switch_scaling(std::span<const int> n_list, double x, double p,
                            const SwitchOptions& options = {});

/// Spin-j pairs h_g = S_x, h_λ = S_z (qubit j = 1/2, qutrit j = 1).
/// Columns: qfi, bound, qfi_over_n2, qfi_saturating. The generic probe is
/// the extreme superposition of h_λ; the saturating one is rebuilt per N
/// from the conjugated generator.
ScanResult dv_bound_scan(const std::string& system, std::span<const int> n_list, double g_bar);

}  // namespace ncmetro
