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

#include "ncmetro/gaussian.hpp"

#include <numbers>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kHermitianTolerance = 1e-10;

void require_hermitian(const LadderPolynomial& poly) {
  const double scale = std::max(1.0, max_abs_coefficient(poly));
  if (!is_hermitian(poly, kHermitianTolerance * scale)) {
    throw NotGaussianError("generator is not Hermitian: " + poly.to_string());
  }
}

using Matrix3d = Eigen::Matrix3d;

Matrix3d augmented_generator(const QuadraticHamiltoniand& ham) {
  const Eigen::Matrix2d omega = symplectic_form<double>();
  Matrix3d aug = Matrix3d::Zero();
  aug.topLeftCorner<2, 2>() = omega * ham.g;
  aug.topRightCorner<2, 1>() = omega * ham.d;
  return aug;
}

GaussianStated after_auxiliary_gates(const EncodingProtocol& p) {
  const QuadraticHamiltoniand aux = to_quadratic(p.h_g);
  const PhaseSpaceMap<double> gate = phase_space_map(aux, p.g_bar);
  GaussianStated state = gaussian_probe(p.probe);
  for (int i = 0; i < p.n; ++i) state = apply(gate, state);
  return state;
}

}  // namespace

QuadraticHamiltoniand to_quadratic(const LadderPolynomial& poly) {
  require_hermitian(poly);
  if (poly.degree() > 2) {
    throw NotGaussianError(fmt::format(
        "degree-{} generator is not Gaussian-simulable, use the Fock oracle", poly.degree()));
  }
  QuadraticHamiltoniand ham;
  // n̂ = (X̂² + P̂² − 1)/2
  const double number = poly.coefficient(1, 1).real();
  ham.g(0, 0) += number;
  ham.g(1, 1) += number;
  // w â†² + w* â² = Re w (X̂² − P̂²) + Im w (X̂P̂ + P̂X̂)
  const Complex w = poly.coefficient(2, 0);
  ham.g(0, 0) += 2.0 * w.real();
  ham.g(1, 1) -= 2.0 * w.real();
  ham.g(0, 1) += 2.0 * w.imag();
  ham.g(1, 0) += 2.0 * w.imag();
  // v â† + v* â = √2 (Re v X̂ + Im v P̂)
  const Complex v = poly.coefficient(1, 0);
  ham.d << std::numbers::sqrt2 * v.real(), std::numbers::sqrt2 * v.imag();
  return ham;
}

LinearQuadrature linear_quadrature(const LadderPolynomial& poly) {
  require_hermitian(poly);
  if (poly.degree() > 1) {
    throw NotGaussianError(fmt::format(
        "variance of a degree-{} generator needs the Fock oracle", poly.degree()));
  }
  const Complex v = poly.coefficient(1, 0);
  return {std::numbers::sqrt2 * v.real(), std::numbers::sqrt2 * v.imag(),
          poly.coefficient(0, 0).real()};
}

GaussianStated gaussian_probe(const ProbeDescriptor& probe) {
  return std::visit(
      overloaded{
          [](const VacuumProbe&) { return GaussianStated::vacuum(); },
          [](const CoherentProbe& c) { return GaussianStated::coherent(c.alpha); },
          [](const SqueezedVacuumProbe& s) { return GaussianStated::squeezed_vacuum(s.r, s.phi); },
          [](const FockProbe&) -> GaussianStated {
            throw NotGaussianError("explicit Fock amplitudes are not a Gaussian probe");
          }},
      probe);
}

GaussianStated run_protocol(const EncodingProtocol& protocol) {
  protocol.validate();
  GaussianStated state = after_auxiliary_gates(protocol);
  const PhaseSpaceMap<double> gate =
      phase_space_map(to_quadratic(protocol.h_lambda), protocol.lambda_bar);
  for (int i = 0; i < protocol.n; ++i) state = apply(gate, state);
  return state;
}

double qfi_linear_generator(const GaussianStated& probe, const LadderPolynomial& gen) {
  const LinearQuadrature lin = linear_quadrature(gen);
  const Eigen::Vector2d u{lin.x, lin.p};
  return std::max(0.0, 4.0 * u.dot(probe.cov * u));
}

MomentDerivative moment_derivative(const EncodingProtocol& protocol) {
  protocol.validate();
  const GaussianStated before = after_auxiliary_gates(protocol);
  const Matrix3d a = augmented_generator(to_quadratic(protocol.h_lambda));
  const double n = protocol.n;
  const Matrix3d m = (a * (n * protocol.lambda_bar)).exp();
  const Matrix3d dm = n * a * m;

  const Eigen::Matrix2d s = m.topLeftCorner<2, 2>();
  const Eigen::Matrix2d ds = dm.topLeftCorner<2, 2>();
  MomentDerivative out;
  out.state.mean = s * before.mean + m.topRightCorner<2, 1>();
  out.state.cov = s * before.cov * s.transpose();
  out.dmean = ds * before.mean + dm.topRightCorner<2, 1>();
  out.dcov = ds * before.cov * s.transpose() + s * before.cov * ds.transpose();
  return out;
}

double qfi_pure_gaussian(const EncodingProtocol& protocol) {
  const MomentDerivative md = moment_derivative(protocol);
  const Eigen::Matrix2d inv = md.state.cov.inverse();
  const Eigen::Matrix2d w = inv * md.dcov;
  return md.dmean.dot(inv * md.dmean) + 0.25 * (w * w).trace();
}

double cfi_quadrature(const EncodingProtocol& protocol, const HomodyneSpecd& spec) {
  const MomentDerivative md = moment_derivative(protocol);
  const Eigen::Vector2d u = spec.direction();
  const double var = u.dot(md.state.cov * u);
  if (var < 1e-300) throw DegenerateMeasurementError("homodyne variance vanishes");
  const double dmu = u.dot(md.dmean);
  const double dvar = u.dot(md.dcov * u);
  return dmu * dmu / var + 0.5 * dvar * dvar / (var * var);
}

}  // namespace ncmetro
