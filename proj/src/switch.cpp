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

#include "ncmetro/switch.hpp"

#include <cmath>
#include <numbers>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

void require_probe(int n, const FockVector& probe) {
  if (n < 1) throw ValidationError("SWITCH needs N >= 1");
  if (probe.size() < 2) throw ValidationError("SWITCH probe needs dim >= 2");
  if (std::abs(probe.norm() - 1.0) > 1e-10) throw ValidationError("SWITCH probe is not normalized");
}

// Position and momentum propagators at the probe's dimension, reused across
// all parameter values of one evaluation.
struct DisplacementPair {
  explicit DisplacementPair(int dim)
      : momentum(matrix_of(LadderPolynomial::momentum(), dim)),
        position(matrix_of(LadderPolynomial::position(), dim)) {}

  // Û_A Û_B|ψ⟩
  FockVector ab(int n, double x, double p, const FockVector& psi) const {
    return momentum.apply(position.apply(psi, n * p), n * x);
  }
  // Û_B Û_A|ψ⟩
  FockVector ba(int n, double x, double p, const FockVector& psi) const {
    return position.apply(momentum.apply(psi, n * x), n * p);
  }

  Propagator momentum;
  Propagator position;
};

SwitchState assemble(const DisplacementPair& gates, int n, double x, double p,
                     const FockVector& probe, CausalOrder order) {
  const Eigen::Index dim = probe.size();
  SwitchState out;
  out.joint = FockVector::Zero(2 * dim);
  const FockVector first = gates.ab(n, x, p, probe);
  check_leakage(first, "switch_protocol");
  if (order == CausalOrder::Superposed) {
    const double s = 1.0 / std::numbers::sqrt2;
    const FockVector second = gates.ba(n, x, p, probe);
    check_leakage(second, "switch_protocol");
    out.control << s, s;
    out.joint.head(dim) = s * first;
    out.joint.tail(dim) = s * second;
  } else {
    out.control << 1.0, 0.0;
    out.joint.head(dim) = first;
  }
  return out;
}

}  // namespace

SwitchState switch_protocol(int n, double x, double p, const FockVector& probe,
                            CausalOrder order) {
  require_probe(n, probe);
  const DisplacementPair gates(static_cast<int>(probe.size()));
  return assemble(gates, n, x, p, probe, order);
}

Eigen::Matrix2cd reduced_control(const SwitchState& state) {
  Eigen::Matrix2cd rho;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) rho(i, j) = state.branch(j).dot(state.branch(i));
  }
  return rho;
}

Complex branch_overlap(int n, double x, double p, const FockVector& probe) {
  require_probe(n, probe);
  const DisplacementPair gates(static_cast<int>(probe.size()));
  const FockVector ab = gates.ab(n, x, p, probe);
  const FockVector ba = gates.ba(n, x, p, probe);
  check_leakage(ab, "branch_overlap");
  check_leakage(ba, "branch_overlap");
  return ab.dot(ba);
}

SwitchQfi switch_qfi(int n, double x, double p, const FockVector& probe, CausalOrder order,
                     double step) {
  require_probe(n, probe);
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  const DisplacementPair gates(static_cast<int>(probe.size()));
  const SwitchState centre = assemble(gates, n, x, p, probe, order);
  const Eigen::Matrix2cd rho = reduced_control(centre);

  auto passes = [&](double h) {
    const SwitchState plus = assemble(gates, n, x + h, p, probe, order);
    const SwitchState minus = assemble(gates, n, x - h, p, probe, order);
    const FockVector dpsi = (plus.joint - minus.joint) / (2.0 * h);
    const Eigen::Matrix2cd drho = (reduced_control(plus) - reduced_control(minus)) / (2.0 * h);
    return SwitchQfi{mixed_state_qfi(rho, drho), pure_state_qfi(centre.joint, dpsi)};
  };
  const SwitchQfi coarse = passes(step);
  const SwitchQfi fine = passes(0.5 * step);
  return {(4.0 * fine.control - coarse.control) / 3.0, (4.0 * fine.joint - coarse.joint) / 3.0};
}

}  // namespace ncmetro
