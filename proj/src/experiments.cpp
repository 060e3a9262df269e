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

#include "ncmetro/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ncmetro/dv_bound.hpp"
#include "ncmetro/errors.hpp"
#include "ncmetro/gaussian.hpp"
#include "ncmetro/generator.hpp"
#include "ncmetro/nilpotency.hpp"

namespace ncmetro {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string real(double v) { return fmt::format("{:.17g}", v); }

std::string complex_text(Complex z) { return fmt::format("{:.17g}{:+.17g}i", z.real(), z.imag()); }

std::vector<int> sorted_unique(std::span<const int> values, int minimum, const char* what) {
  if (values.empty()) throw ValidationError(fmt::format("{} list is empty", what));
  std::vector<int> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.front() < minimum) {
    throw ValidationError(fmt::format("{} values must be >= {}", what, minimum));
  }
  return out;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(fmt::format("{} must be finite", what));
}

std::string list_text(std::span<const int> v) { return fmt::format("{}", fmt::join(v, ",")); }

double generator_qfi(const EncodingProtocol& protocol) {
  const GeneratorResult gen = local_generator(protocol);
  return qfi_linear_generator(gaussian_probe(protocol.probe), gen.generator);
}

FitResult fit_column(const ScanResult& scan, const std::string& column) {
  const auto keys = scan.keys();
  const auto values = scan.column_values(column);
  const auto pts = zip(keys, values);
  return fit_loglog_slope(pts);
}

template <typename MakeProtocol>
ScalingStudy qfi_scaling(const std::string& label, std::span<const int> n_list,
                         MakeProtocol make) {
  ScalingStudy out;
  out.scan.label = label;
  out.scan.key_column = "N";
  out.scan.columns = {"qfi"};
  for (int n : n_list) out.scan.rows.push_back({n, {generator_qfi(make(n))}});
  out.fit = fit_column(out.scan, "qfi");
  return out;
}

}  // namespace

std::size_t ScanResult::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ValidationError("no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ScanResult::column_values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.values.at(c));
  return out;
}

std::vector<double> ScanResult::keys() const {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.key);
  return out;
}

ScanResult fig2a_scan(std::span<const int> k_list, std::span<const int> n_list) {
  const auto ks = sorted_unique(k_list, 0, "K");
  const auto ns = sorted_unique(n_list, 1, "N");
  ScanResult out;
  out.label = "fig2a";
  out.key_column = "N";
  for (int k : ks) out.columns.push_back(fmt::format("logcoef_K{}", k));
  for (int n : ns) {
    ScanRow row{n, {}};
    for (int k : ks) row.values.push_back(log_leading_coefficient(n, k) / std::numbers::ln10);
    out.rows.push_back(std::move(row));
  }
  out.metadata = {{"K", list_text(ks)}, {"N", list_text(ns)}, {"g_bar", "1"}, {"variance", "1"}};
  return out;
}

ScanResult fig2b_scan(std::span<const int> n_list, int k_max) {
  const auto ns = sorted_unique(n_list, 1, "N");
  if (k_max < ns.back() + 1) throw ValidationError("fig2b needs k_max >= max(N) + 1");
  ScanResult out;
  out.label = "fig2b";
  out.key_column = "K";
  for (int n : ns) out.columns.push_back(fmt::format("logcoef_N{}", n));
  for (int k = 0; k <= k_max; ++k) {
    ScanRow row{k, {}};
    for (int n : ns) row.values.push_back(log_leading_coefficient(n, k) / std::numbers::ln10);
    out.rows.push_back(std::move(row));
  }
  out.metadata = {{"N", list_text(ns)}, {"k_max", std::to_string(k_max)}, {"g_bar", "1"},
                  {"variance", "1"}};
  for (int n : ns) out.metadata.emplace_back(fmt::format("argmax_N{}", n), list_text(k_peak(n, k_max)));
  return out;
}

ScanResult fig3_scan(std::span<const int> n_list, const Fig3Options& o) {
  const auto ns = sorted_unique(n_list, 1, "N");
  if (!(o.xi_bar > 0.0)) throw ValidationError("fig3 needs xi_bar > 0");
  require_finite(o.xi_bar, "xi_bar");
  require_finite(o.theta, "theta");
  require_finite(o.alpha.real(), "alpha");
  require_finite(o.alpha.imag(), "alpha");
  const ProbeDescriptor probe = CoherentProbe{o.alpha};
  const HomodyneSpecd spec{o.theta};

  ScanResult out;
  out.label = "fig3";
  out.key_column = "N";
  out.columns = {"qfi_closed", "qfi_gaussian", "qfi_state", "qfi_fock",
                 "cfi",        "ratio",        "ratio_pi4", "fock_trusted"};
  for (int n : ns) {
    const EncodingProtocol proto = squeezing_protocol(n, o.xi_bar, 0.0, probe);
    const double closed = 2.0 * n * n * std::cosh(2.0 * n * o.xi_bar);
    const double gaussian = generator_qfi(proto);
    const double state = qfi_pure_gaussian(proto);
    double fock = kNaN;
    double trusted = 0.0;
    if (n <= o.fock_max_n) {
      try {
        const NumericQfi q = qfi_numeric_converged(proto, o.fock_dim, o.step);
        if (q.passes_agree && q.dim_converged) {
          fock = q.value;
          trusted = 1.0;
        }
      } catch (const TrustError&) {
      }
    }
    const double cfi = cfi_quadrature(proto, spec);
    const double ratio_pi4 = 1.0 / (1.0 + std::exp(-4.0 * n * o.xi_bar));
    out.rows.push_back({n, {closed, gaussian, state, fock, cfi, cfi / gaussian, ratio_pi4, trusted}});
  }
  out.metadata = {{"N", list_text(ns)},
                  {"xi_bar", real(o.xi_bar)},
                  {"alpha", complex_text(o.alpha)},
                  {"theta", real(o.theta)},
                  {"probe", describe(probe)},
                  {"fock_dim", std::to_string(o.fock_dim)},
                  {"fock_max_n", std::to_string(o.fock_max_n)},
                  {"step", real(o.step)}};
  return out;
}

ScalingStudy example1_scaling(std::span<const int> n_list, double s_bar,
                              const ProbeDescriptor& probe) {
  const auto ns = sorted_unique(n_list, 1, "N");
  require_finite(s_bar, "s_bar");
  if (ns.back() < 8 * ns.front()) throw ValidationError("example1 needs max N >= 8 min N");
  auto study = qfi_scaling("example1", ns, [&](int n) { return shearing_protocol(n, s_bar, 0.0, probe); });
  study.scan.metadata = {{"N", list_text(ns)}, {"s_bar", real(s_bar)}, {"probe", describe(probe)}};
  return study;
}

ScalingStudy constant_commutator_scaling(std::span<const int> n_list, double g_bar,
                                         const ProbeDescriptor& probe) {
  const auto ns = sorted_unique(n_list, 1, "N");
  require_finite(g_bar, "g_bar");
  auto study = qfi_scaling("xp-constant", ns,
                           [&](int n) { return constant_commutator_protocol(n, g_bar, 0.0, probe); });
  study.scan.metadata = {{"N", list_text(ns)}, {"g_bar", real(g_bar)}, {"probe", describe(probe)}};
  return study;
}

ScalingStudy squeezing_exponent(std::span<const int> n_list, double xi_bar,
                                const ProbeDescriptor& probe) {
  const auto ns = sorted_unique(n_list, 1, "N");
  if (!(xi_bar > 0.0)) throw ValidationError("squeezing exponent needs xi_bar > 0");
  ScalingStudy out;
  out.scan.label = "squeezing-exponent";
  out.scan.key_column = "N";
  out.scan.columns = {"qfi", "qfi_over_n2"};
  std::vector<std::pair<double, double>> pts;
  for (int n : ns) {
    const double f = generator_qfi(squeezing_protocol(n, xi_bar, 0.0, probe));
    const double reduced = f / (static_cast<double>(n) * n);
    out.scan.rows.push_back({n, {f, reduced}});
    pts.emplace_back(n, reduced);
  }
  out.fit = fit_semilog_slope(pts);
  out.scan.metadata = {{"N", list_text(ns)}, {"xi_bar", real(xi_bar)}, {"probe", describe(probe)}};
  return out;
}

ScalingStudy switch_scaling(std::span<const int> n_list, double x, double p,
                            const SwitchOptions& o) {
  const auto ns = sorted_unique(n_list, 1, "N");
  require_finite(x, "x");
  require_finite(p, "p");
  if (p == 0.0) throw ValidationError("switch scaling needs p != 0");
  if (o.dim < 8 || o.dim > kMaxFockDim) throw ValidationError("switch dim out of range");
  const FockVector probe = prepare_probe(VacuumProbe{}, o.dim);

  ScalingStudy out;
  out.scan.label = "switch";
  out.scan.key_column = "N";
  out.scan.columns = {"qfi_control", "qfi_joint", "branch_phase", "expected_phase"};
  for (int n : ns) {
    const SwitchQfi q = switch_qfi(n, x, p, probe, o.order, o.step);
    const double phase = -std::arg(branch_overlap(n, x, p, probe));
    const double expected = std::remainder(static_cast<double>(n) * n * x * p, 2.0 * std::numbers::pi);
    out.scan.rows.push_back({n, {q.control, q.joint, phase, expected}});
  }
  const bool superposed = o.order == CausalOrder::Superposed;
  out.fit = fit_column(out.scan, superposed ? "qfi_control" : "qfi_joint");
  out.scan.metadata = {{"N", list_text(ns)},
                       {"x", real(x)},
                       {"p", real(p)},
                       {"dim", std::to_string(o.dim)},
                       {"order", superposed ? "superposed" : "definite"},
                       {"step", real(o.step)},
                       {"probe", "vacuum"}};
  return out;
}

ScanResult dv_bound_scan(const std::string& system, std::span<const int> n_list, double g_bar) {
  const auto ns = sorted_unique(n_list, 1, "N");
  require_finite(g_bar, "g_bar");
  double spin = 0.0;
  if (system == "qubit") {
    spin = 0.5;
  } else if (system == "qutrit") {
    spin = 1.0;
  } else {
    throw ValidationError("DV system must be qubit or qutrit, got " + system);
  }
  const Eigen::MatrixXcd h_g = spin_matrix(spin, 'x');
  const Eigen::MatrixXcd h_lambda = spin_matrix(spin, 'z');
  const Eigen::VectorXcd generic = extreme_superposition(h_lambda);
  const Propagator aux(h_g);

  ScanResult out;
  out.label = "dvbound";
  out.key_column = "N";
  out.columns = {"qfi", "bound", "qfi_over_n2", "qfi_saturating"};
  for (int n : ns) {
    const std::array<int, 1> one{n};
    const DvBoundRow row = dv_bound_check(h_g, h_lambda, one, g_bar, generic).rows.front();
    const Eigen::MatrixXcd u = aux.unitary(-n * g_bar);
    const Eigen::VectorXcd best = extreme_superposition(u * h_lambda * u.adjoint());
    const DvBoundRow sat = dv_bound_check(h_g, h_lambda, one, g_bar, best).rows.front();
    out.rows.push_back({n, {row.qfi, row.bound, row.qfi_over_n2, sat.qfi}});
  }
  out.metadata = {{"system", system}, {"N", list_text(ns)}, {"g_bar", real(g_bar)},
                  {"h_g", "S_x"}, {"h_lambda", "S_z"}, {"probe", "extreme superposition of h_lambda"}};
  return out;
}

}  // namespace ncmetro
