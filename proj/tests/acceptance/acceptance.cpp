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

// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ncmetro/cli_io.hpp"
#include "ncmetro/experiments.hpp"
#include "ncmetro/fock.hpp"
#include "ncmetro/gaussian.hpp"
#include "ncmetro/generator.hpp"
#include "ncmetro/nilpotency.hpp"
#include "support.hpp"

using namespace ncmetro;

namespace {

const Complex I{0.0, 1.0};

LadderPolynomial X() { return LadderPolynomial::position(); }
LadderPolynomial P() { return LadderPolynomial::momentum(); }

// Collects failed checks with a short reason; a criterion passes when none
// fail and it finished within its time budget.
class Checks {
 public:
  void require(bool ok, std::string what) {
    if (!ok) failures_.push_back(std::move(what));
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string s;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) s += (s.empty() ? "FAILED " : "; FAILED ") + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

void algebra(Checks& c) {
  const double xp = max_abs_difference(commutator(X(), P()), LadderPolynomial::scalar(I));
  const double x2p = max_abs_difference(commutator(X() * X(), P()), 2.0 * I * X());
  const double sq = max_abs_difference(commutator(X() * X() - P() * P(), 2.0 * I * X()), -4.0 * P());
  c.require(xp <= kChopTolerance, fmt::format("[X,P] off by {:.2e}", xp));
  c.require(x2p <= kChopTolerance, fmt::format("[X^2,P] off by {:.2e}", x2p));
  c.require(sq <= kChopTolerance, fmt::format("[X^2-P^2,2iX] off by {:.2e}", sq));

  std::mt19937_64 rng(20260101);
  std::vector<LadderPolynomial> pool;
  for (int i = 0; i < 100; ++i) pool.push_back(testing_support::random_hermitian(rng, 4));
  double jacobi = 0.0;
  double antisym = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& a = pool[i];
    const auto& b = pool[(i + 1) % 100];
    const auto& d = pool[(i + 37) % 100];
    const LadderPolynomial j =
        commutator(a, commutator(b, d)) + commutator(b, commutator(d, a)) + commutator(d, commutator(a, b));
    jacobi = std::max(jacobi, max_abs_coefficient(j));
    antisym = std::max(antisym, max_abs_coefficient(commutator(a, b) + commutator(b, a)));
  }
  c.require(jacobi <= 1e-12, fmt::format("Jacobi residue {:.2e}", jacobi));
  c.require(antisym <= 1e-12, fmt::format("antisymmetry residue {:.2e}", antisym));
  c.note(fmt::format("max Jacobi residue {:.1e}", jacobi));
}

void classification(Checks& c) {
  const auto r1 = classify_pair(X() * X(), P());
  const auto* f = std::get_if<Finite>(&r1.classification);
  c.require(f && f->index == 1, "(X^2,P) is not Finite(1): " + r1.describe());

  const auto r2 = classify_pair(X(), P());
  const auto* fc = std::get_if<FiniteConstant>(&r2.classification);
  c.require(fc && fc->index == 1 && std::abs(fc->value - I) <= 1e-12,
            "(X,P) is not FiniteConstant(1,i): " + r2.describe());

  const auto squeeze = LadderPolynomial::monomial(2, 0) + LadderPolynomial::monomial(0, 2);
  const auto r3 = classify_pair(squeeze, P());
  const auto* ci = std::get_if<ClosedInfinite>(&r3.classification);
  c.require(ci && std::abs(ci->p - 4.0) <= 1e-10, "squeezing pair is not ClosedInfinite(4): " + r3.describe());
}

void generator_fidelity(Checks& c) {
  double identity_gap = 0.0;
  for (int n = 1; n <= 12; ++n) {
    for (double g : {-0.2, 0.1, 0.2}) {
      const LadderPolynomial shear = n * P() - 2.0 * n * n * g * X();
      identity_gap = std::max(identity_gap, max_abs_difference(local_generator(shearing_protocol(n, g)).generator, shear) /
                                                max_abs_coefficient(shear));
      const LadderPolynomial sq = -n * std::sinh(n * g) * X() + n * std::cosh(n * g) * P();
      identity_gap = std::max(identity_gap, max_abs_difference(local_generator(squeezing_protocol(n, g)).generator, sq) /
                                                max_abs_coefficient(sq));
    }
  }
  c.require(identity_gap <= 1e-12, fmt::format("printed generators off by {:.2e}", identity_gap));

  double series_gap = 0.0;
  double stability_gap = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (double g : {-0.2, -0.1, 0.1, 0.2}) {
      for (const EncodingProtocol& proto : {shearing_protocol(n, g), squeezing_protocol(n, 2.0 * g)}) {
        const MatrixOperator conj40 = generator_by_conjugation(proto, 40);
        const MatrixOperator series = matrix_of(local_generator(proto).generator, 40);
        const double scale = std::max(1.0, series.cwiseAbs().maxCoeff());
        series_gap = std::max(series_gap,
                              (series - conj40).topLeftCorner(20, 20).cwiseAbs().maxCoeff() / scale);
        // the 40 x 40 block at dim 80 certifies the same 20 x 20 block again
        ConjugationOptions wide;
        wide.certified_block = 20;
        const MatrixOperator conj80 = generator_by_conjugation(proto, 80, wide);
        stability_gap = std::max(
            stability_gap,
            (conj80.topLeftCorner(20, 20) - conj40.topLeftCorner(20, 20)).cwiseAbs().maxCoeff() / scale);
      }
    }
  }
  c.require(series_gap < 1e-8, fmt::format("series vs conjugation {:.2e}", series_gap));
  c.require(stability_gap < 1e-8, fmt::format("dim 40 vs 80 {:.2e}", stability_gap));
  c.note(fmt::format("series vs conjugation {:.1e}, dim 40->80 {:.1e}", series_gap, stability_gap));
}

void squeezing_qfi(Checks& c) {
  Fig3Options o;
  o.xi_bar = 0.1;
  o.alpha = {0.3, 0.0};
  o.fock_max_n = 5;
  o.fock_dim = 80;
  const ScanResult s = fig3_scan(int_range(1, 12), o);
  double gaussian_gap = 0.0;
  double fock_gap = 0.0;
  for (const auto& row : s.rows) {
    const double closed = 2.0 * row.key * row.key * std::cosh(2.0 * row.key * o.xi_bar);
    gaussian_gap = std::max(gaussian_gap, rel(row.values[s.column("qfi_gaussian")], closed));
    if (row.key <= 5) {
      c.require(row.values[s.column("fock_trusted")] == 1.0, fmt::format("Fock N={} untrusted", row.key));
      fock_gap = std::max(fock_gap, rel(row.values[s.column("qfi_fock")], closed));
    }
  }
  c.require(gaussian_gap <= 1e-10, fmt::format("Gaussian engine off by {:.2e}", gaussian_gap));
  c.require(fock_gap < 1e-2, fmt::format("Fock oracle off by {:.2e}", fock_gap));
  c.note(fmt::format("Gaussian {:.1e}, Fock {:.1e} relative", gaussian_gap, fock_gap));
}

void homodyne(Checks& c) {
  const double xi = 0.1;
  double variance_gap = 0.0;
  double cfi_gap = 0.0;
  double ratio_gap = 0.0;
  double worst_high_ratio = 1.0;
  for (int n = 1; n <= 12; ++n) {
    const EncodingProtocol proto = squeezing_protocol(n, xi, 0.0, CoherentProbe{{0.3, 0.0}});
    const GaussianStated state = run_protocol(proto);
    for (int j = 0; j < 16; ++j) {
      const double theta = j * std::numbers::pi / 16.0;
      const double s2 = std::sin(2.0 * theta);
      const double want = std::exp(2.0 * n * xi) * (1.0 - s2) / 4.0 + std::exp(-2.0 * n * xi) * (1.0 + s2) / 4.0;
      variance_gap = std::max(variance_gap, std::abs(homodyne_variance(state, HomodyneSpecd{theta}) - want));
    }
    const double cfi = cfi_quadrature(proto, HomodyneSpecd{std::numbers::pi / 4});
    cfi_gap = std::max(cfi_gap, rel(cfi, n * n * std::exp(2.0 * n * xi)));
    const double ratio = cfi / qfi_pure_gaussian(proto);
    ratio_gap = std::max(ratio_gap, std::abs(ratio - 1.0 / (1.0 + std::exp(-4.0 * n * xi))));
    if (n * xi >= 1.0) worst_high_ratio = std::min(worst_high_ratio, ratio);
  }
  c.require(variance_gap <= 1e-10, fmt::format("variance off by {:.2e}", variance_gap));
  c.require(cfi_gap <= 1e-9, fmt::format("CFI off by {:.2e}", cfi_gap));
  c.require(ratio_gap <= 1e-9, fmt::format("ratio off by {:.2e}", ratio_gap));
  c.require(worst_high_ratio > 0.98, fmt::format("ratio {:.4f} at N xi >= 1", worst_high_ratio));
  c.note(fmt::format("min CFI/QFI at N xi >= 1: {:.5f}", worst_high_ratio));
}

void scaling_fits(Checks& c) {
  const auto wide = int_range(8, 64);
  const double shear = example1_scaling(wide, 0.2).fit.slope;
  const double control = example1_scaling(wide, 0.0).fit.slope;
  c.require(std::abs(shear - 4.0) <= 0.05, fmt::format("shearing slope {:.5f}", shear));
  c.require(std::abs(control - 2.0) <= 0.01, fmt::format("s=0 slope {:.5f}", control));

  // The rate of ln(F/N²) is 2ξ̄·tanh(2Nξ̄); ξ̄ = 0.25 puts N in [4,12]
  // deep enough into the asymptote for the 2% band.
  const double xi = 0.25;
  const double rate = squeezing_exponent(int_range(4, 12), xi).fit.slope;
  c.require(rel(rate, 2.0 * xi) <= 0.02, fmt::format("squeezing rate/2xi {:.5f}", rate / (2.0 * xi)));
  const double rate_small = squeezing_exponent(int_range(4, 12), 0.1).fit.slope;
  c.note(fmt::format("QFI slope {:.4f}, control {:.4f}, rate/2xi {:.4f} at xi=0.25 ({:.4f} at xi=0.1)", shear,
                     control, rate / (2.0 * xi), rate_small / 0.2));
}

void coefficient_figures(Checks& c) {
  const std::vector<int> ks{1, 4, 6};
  const auto ns = int_range(1, 30);
  const ScanResult a = fig2a_scan(ks, ns);
  std::vector<double> log_n;
  for (double n : a.keys()) log_n.push_back(std::log10(n));
  for (int k : ks) {
    const double slope = fit_line(zip(log_n, a.column_values(fmt::format("logcoef_K{}", k)))).slope;
    c.require(std::abs(slope - 2.0 * (1 + k)) <= 1e-12, fmt::format("K={} slope {:.15f}", k, slope));
  }
  const std::vector<int> fig_ns{6, 10, 16, 20};
  const ScanResult b = fig2b_scan(fig_ns, 30);
  for (int n : fig_ns) {
    bool found = false;
    for (const auto& [key, value] : b.metadata) {
      found |= key == fmt::format("argmax_N{}", n) && value == fmt::format("{},{}", n - 1, n);
    }
    c.require(found, fmt::format("fig2b argmax for N={}", n));
  }
  for (int n = 2; n <= 30; ++n) {
    c.require(k_peak(n, 40) == std::vector<int>{n - 1, n}, fmt::format("k_peak N={}", n));
  }
}

void switch_scaling_check(Checks& c) {
  SwitchOptions o;
  o.dim = 80;
  const ScalingStudy s = switch_scaling(int_range(1, 6), 0.1, 0.2, o);
  double phase_gap = 0.0;
  for (const auto& row : s.scan.rows) {
    phase_gap = std::max(phase_gap, std::abs(std::remainder(row.values[2] - row.values[3], 2.0 * std::numbers::pi)));
  }
  o.order = CausalOrder::Definite;
  const double definite = switch_scaling(int_range(1, 6), 0.1, 0.2, o).fit.slope;
  c.require(phase_gap <= 1e-6, fmt::format("branch phase off by {:.2e}", phase_gap));
  c.require(std::abs(s.fit.slope - 4.0) <= 0.1, fmt::format("superposed slope {:.4f}", s.fit.slope));
  c.require(std::abs(definite - 2.0) <= 0.1, fmt::format("definite slope {:.4f}", definite));
  c.note(fmt::format("slopes {:.4f} superposed, {:.4f} definite", s.fit.slope, definite));
}

void discrete_variable(Checks& c) {
  double worst_ratio = 0.0;
  double saturation_gap = 0.0;
  for (const char* system : {"qubit", "qutrit"}) {
    for (double g : {0.1, 1.0}) {
      const ScanResult r = dv_bound_scan(system, int_range(1, 50), g);
      for (const auto& row : r.rows) {
        c.require(row.values[0] <= row.values[1], fmt::format("{} N={} g={} above bound", system, row.key, g));
        worst_ratio = std::max(worst_ratio, row.values[0] / row.values[1]);
        saturation_gap = std::max(saturation_gap, rel(row.values[3], row.values[1]));
      }
    }
  }
  c.require(saturation_gap <= 1e-9, fmt::format("saturating probe off by {:.2e}", saturation_gap));
  c.note(fmt::format("max QFI/bound {:.6f}, saturation gap {:.1e}", worst_ratio, saturation_gap));
}

void determinism(Checks& c) {
  const std::vector<std::vector<std::string>> commands{
      {"fig2a"},
      {"fig2b"},
      {"fig3", "--N", "1..6"},
      {"example1"},
      {"switch", "--N", "1..4"},
      {"dvbound", "--system", "qutrit"},
      {"classify", "--preset", "squeeze-inf"}};
  for (const auto& args : commands) {
    std::ostringstream first, second, err;
    const int a = run_cli(args, first, err);
    const int b = run_cli(args, second, err);
    c.require(a == kExitOk && b == kExitOk, args.front() + " exited nonzero: " + err.str());
    c.require(first.str() == second.str(), args.front() + " CSV differs between runs");

    std::vector<std::string> json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    std::ostringstream json;
    run_cli(json_args, json, err);
    const ResultEnvelope e = envelope_from_json(json.str());
    c.require(e == envelope_from_json(to_json(e)) && to_json(e) == json.str(),
              args.front() + " JSON round trip is lossy");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Checks&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "algebra", 5, algebra},
      {2, "classification", 1, classification},
      {3, "generator fidelity", 30, generator_fidelity},
      {4, "squeezing QFI", 60, squeezing_qfi},
      {5, "homodyne", 10, homodyne},
      {6, "scaling fits", 30, scaling_fits},
      {7, "coefficient figures", 1, coefficient_figures},
      {8, "switch", 120, switch_scaling_check},
      {9, "discrete-variable bound", 10, discrete_variable},
      {10, "determinism and round trip", 5, determinism},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(checks);
    } catch (const std::exception& e) {
      checks.require(false, std::string("threw: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks.require(seconds < crit.budget_seconds,
                   fmt::format("runtime {:.2f} s over the {:.0f} s budget", seconds, crit.budget_seconds));
    const bool ok = checks.ok();
    failed += ok ? 0 : 1;
    fmt::print("{} criterion {:>2} {:<28} {:7.2f} s  {}\n", ok ? "PASS" : "FAIL", crit.id, crit.name, seconds,
               checks.summary());
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
