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

#include <Eigen/Dense>

#include "ncmetro/ladder_polynomial.hpp"
#include "ncmetro/protocol.hpp"

namespace ncmetro {

/// Dense operator on the truncated Fock space span{|0⟩, …, |D−1⟩}.
using MatrixOperator = Eigen::MatrixXcd;
/// State vector on the truncated Fock space.
using FockVector = Eigen::VectorXcd;

inline constexpr int kDefaultFockDim = 80;
inline constexpr int kMaxFockDim = 1024;
/// Largest tolerated population of the last retained level.
inline constexpr double kLeakageTolerance = 1e-8;
inline constexpr double kDefaultFiniteDifferenceStep = 1e-4;

/// ‖M − M†‖_max < tolerance.
template <typename Derived>
bool is_hermitian_matrix(const Eigen::MatrixBase<Derived>& m, double tolerance = 1e-10) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tolerance;
}

/// Matrix image of a normal-ordered polynomial: each term c·a†^m a^n is
/// composed from the truncated ladder matrices with ⟨n−1|â|n⟩ = √n. Entries
/// ⟨i|·|j⟩ are exact projections for i, j < dim. `max_dim` lifts the
/// default cap for callers that manage their own working dimension.
MatrixOperator matrix_of(const LadderPolynomial& poly, int dim, int max_dim = kMaxFockDim);

/// Truncated probe amplitudes. Analytic expansions for coherent and
/// squeezed probes; throws LeakageError if truncation loses more than 1e-10
/// of the norm or fills the last level.
FockVector prepare_probe(const ProbeDescriptor& probe, int dim);

/// |ψ(D−1)|².
inline double last_level_population(const FockVector& psi) {
  return std::norm(psi(psi.size() - 1));
}

/// Throws LeakageError when the last level holds more than kLeakageTolerance.
void check_leakage(const FockVector& psi, const char* context);

/// exp(−i t H) for a Hermitian H from one eigendecomposition, reused for
/// every t.
class Propagator {
 public:
  explicit Propagator(const MatrixOperator& hamiltonian);

  int dim() const { return static_cast<int>(values_.size()); }
  MatrixOperator unitary(double t) const;
  FockVector apply(const FockVector& psi, double t) const;

 private:
  MatrixOperator vectors_;
  Eigen::VectorXd values_;
};

/// exp(−i t H)|ψ⟩ with a leakage check on the result.
FockVector evolve_unitary(const FockVector& psi, const MatrixOperator& hamiltonian, double t);

inline Complex expectation(const FockVector& psi, const MatrixOperator& op) {
  return psi.dot(op * psi);
}

/// ⟨O²⟩ − ⟨O⟩² for Hermitian O.
double variance(const FockVector& psi, const MatrixOperator& op);

/// 4(⟨∂ψ|∂ψ⟩ − |⟨ψ|∂ψ⟩|²).
double pure_state_qfi(const FockVector& psi, const FockVector& dpsi);

/// Σ_{λi+λj>0} 2|⟨i|∂ρ|j⟩|²/(λi+λj) over the eigenbasis of ρ.
double mixed_state_qfi(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho);

/// U_λ|Ψ⟩ = exp(−iNλ̄Ĥ_λ) exp(−iNḡĤ_g)|Ψ⟩ in the truncated basis.
FockVector run_protocol_fock(const EncodingProtocol& protocol, int dim);

/// Mean (⟨X̂⟩, ⟨P̂⟩) and symmetrized covariance of a Fock state.
struct FockMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};
FockMoments quadrature_moments(const FockVector& psi);

struct NumericQfi {
  double value = 0.0;   ///< Richardson-extrapolated QFI
  double coarse = 0.0;  ///< central difference at step δ
  double fine = 0.0;    ///< central difference at δ/2
  /// |coarse − fine| / |fine|; above 0.5% the result is flagged.
  double pass_gap = 0.0;
  bool passes_agree = true;
  int dim = 0;
  /// Set by qfi_numeric_converged once the value survived a dimension
  /// doubling within 0.5%.
  bool dim_converged = false;
};

/// QFI for λ̄ from central differences of |Ψ_λ⟩ at δ and δ/2 plus one
/// Richardson step. Throws ConvergenceError when the passes differ by more
/// than 5%, LeakageError on population in the last level.
NumericQfi qfi_numeric(const EncodingProtocol& protocol, int dim = kDefaultFockDim,
                       double step = kDefaultFiniteDifferenceStep);

/// Repeats qfi_numeric with doubled dimension until two successive values
/// agree within 0.5%, starting at `dim`. Leakage at a dimension triggers the
/// next doubling. Throws TruncationError past `max_dim`.
NumericQfi qfi_numeric_converged(const EncodingProtocol& protocol, int dim = kDefaultFockDim,
                                 double step = kDefaultFiniteDifferenceStep,
                                 int max_dim = kMaxFockDim);

}  // namespace ncmetro
