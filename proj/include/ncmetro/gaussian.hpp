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

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ncmetro/ladder_polynomial.hpp"
#include "ncmetro/protocol.hpp"

namespace ncmetro {

// Single-mode Gaussian states in the quadrature ordering R = (X̂, P̂) with
// ħ = 1 and [X̂, P̂] = i. Covariances are symmetrized,
// σ_ij = ⟨{ΔR_i, ΔR_j}⟩/2, so the vacuum has σ = I/2.

template <typename Real>
using Vector2 = Eigen::Matrix<Real, 2, 1>;
template <typename Real>
using Matrix2 = Eigen::Matrix<Real, 2, 2>;

template <typename Real>
struct GaussianState {
  Vector2<Real> mean = Vector2<Real>::Zero();
  Matrix2<Real> cov = Matrix2<Real>::Identity() / Real(2);

  static GaussianState vacuum() { return {}; }

  static GaussianState coherent(std::complex<Real> alpha) {
    GaussianState s;
    s.mean << std::sqrt(Real(2)) * alpha.real(), std::sqrt(Real(2)) * alpha.imag();
    return s;
  }

  /// exp(½(ζ* â² − ζ â†²))|0⟩ with ζ = r e^{iφ}.
  static GaussianState squeezed_vacuum(Real r, Real phi) {
    GaussianState s;
    const Real c = std::cosh(2 * r);
    const Real sh = std::sinh(2 * r);
    s.cov << c - sh * std::cos(phi), -sh * std::sin(phi), -sh * std::sin(phi),
        c + sh * std::cos(phi);
    s.cov /= Real(2);
    return s;
  }

  /// det σ; 1/4 for every pure Gaussian state.
  Real purity_determinant() const { return cov.determinant(); }

  /// ⟨X̂P̂ + P̂X̂⟩ − 2⟨X̂⟩⟨P̂⟩, i.e. twice σ_XP.
  Real symmetrized_covariance_xp() const { return Real(2) * cov(0, 1); }
};

/// H = ½ Rᵀ G R + dᵀ R, constants dropped.
template <typename Real>
struct QuadraticHamiltonian {
  Matrix2<Real> g = Matrix2<Real>::Zero();
  Vector2<Real> d = Vector2<Real>::Zero();
};

/// Q̂ = X̂ cos θ + P̂ sin θ.
template <typename Real>
struct HomodyneSpec {
  Real theta = 0;

  Vector2<Real> direction() const { return {std::cos(theta), std::sin(theta)}; }
};

/// Heisenberg-picture action of exp(−itH): R ↦ S R + shift.
template <typename Real>
struct PhaseSpaceMap {
  Matrix2<Real> s = Matrix2<Real>::Identity();
  Vector2<Real> shift = Vector2<Real>::Zero();

  /// Apply `this` after `first`.
  PhaseSpaceMap after(const PhaseSpaceMap& first) const {
    return {s * first.s, s * first.shift + shift};
  }
};

template <typename Real>
Matrix2<Real> symplectic_form() {
  Matrix2<Real> omega;
  omega << 0, 1, -1, 0;
  return omega;
}

/// dR/dt = Ω(G R + d) integrated exactly through the 3 × 3 augmented
/// generator [[ΩG, Ωd], [0, 0]].
template <typename Real>
PhaseSpaceMap<Real> phase_space_map(const QuadraticHamiltonian<Real>& ham, Real t) {
  const Matrix2<Real> omega = symplectic_form<Real>();
  Eigen::Matrix<Real, 3, 3> aug = Eigen::Matrix<Real, 3, 3>::Zero();
  aug.template topLeftCorner<2, 2>() = omega * ham.g;
  aug.template topRightCorner<2, 1>() = omega * ham.d;
  const Eigen::Matrix<Real, 3, 3> m = (aug * t).exp();
  return {m.template topLeftCorner<2, 2>(), m.template topRightCorner<2, 1>()};
}

template <typename Real>
GaussianState<Real> apply(const PhaseSpaceMap<Real>& map, const GaussianState<Real>& state) {
  return {map.s * state.mean + map.shift, map.s * state.cov * map.s.transpose()};
}

/// exp(−itH) acting on a Gaussian state.
template <typename Real>
GaussianState<Real> evolve(const GaussianState<Real>& state, const QuadraticHamiltonian<Real>& ham,
                           Real t) {
  return apply(phase_space_map(ham, t), state);
}

/// uᵀ σ u with u = (cos θ, sin θ).
template <typename Real>
Real homodyne_variance(const GaussianState<Real>& state, const HomodyneSpec<Real>& spec) {
  const Vector2<Real> u = spec.direction();
  return u.dot(state.cov * u);
}

template <typename Real>
Real homodyne_mean(const GaussianState<Real>& state, const HomodyneSpec<Real>& spec) {
  return spec.direction().dot(state.mean);
}

// Double-precision protocol layer.

using GaussianStated = GaussianState<double>;
using QuadraticHamiltoniand = QuadraticHamiltonian<double>;
using HomodyneSpecd = HomodyneSpec<double>;

/// Quadrature form of a Hermitian polynomial of degree ≤ 2. Throws
/// NotGaussianError for higher degree or non-Hermitian input.
QuadraticHamiltoniand to_quadratic(const LadderPolynomial& poly);

/// a X̂ + b P̂ + c for a Hermitian polynomial of degree ≤ 1.
struct LinearQuadrature {
  double x = 0.0;
  double p = 0.0;
  double constant = 0.0;
};
/// Throws NotGaussianError for degree ≥ 2, directing callers to the Fock
/// oracle.
LinearQuadrature linear_quadrature(const LadderPolynomial& poly);

/// Gaussian image of a probe descriptor; explicit Fock amplitudes throw
/// NotGaussianError.
GaussianStated gaussian_probe(const ProbeDescriptor& probe);

/// All N auxiliary gates, then all N parameter gates, applied to the probe.
/// Throws NotGaussianError unless both generators are quadratic.
GaussianStated run_protocol(const EncodingProtocol& protocol);

/// 4 Var[gen] on `probe` for a linear generator.
double qfi_linear_generator(const GaussianStated& probe, const LadderPolynomial& gen);

/// Final moments of run_protocol together with their λ̄-derivatives.
struct MomentDerivative {
  GaussianStated state;
  Eigen::Vector2d dmean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d dcov = Eigen::Matrix2d::Zero();
};
MomentDerivative moment_derivative(const EncodingProtocol& protocol);

/// QFI of the (pure) output state from its moments,
/// ∂μᵀσ⁻¹∂μ + ¼ Tr[(σ⁻¹∂σ)²]. Independent of the local generator.
double qfi_pure_gaussian(const EncodingProtocol& protocol);

/// Classical Fisher information of homodyne detection along θ,
/// (∂⟨Q̂⟩)²/Δ²Q̂ + ½(∂Δ²Q̂)²/(Δ²Q̂)², with ∂ = ∂/∂λ̄ taken analytically
/// from d/dλ̄ exp(Nλ̄A) = N A exp(Nλ̄A). Throws DegenerateMeasurementError
/// when Δ²Q̂ < 1e-300.
double cfi_quadrature(const EncodingProtocol& protocol, const HomodyneSpecd& spec);

}  // namespace ncmetro
