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

#include "ncmetro/fock.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kPassFlagGap = 5e-3;
constexpr double kPassErrorGap = 5e-2;
constexpr double kDimensionAgreement = 5e-3;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_dim(int dim, int max_dim = kMaxFockDim) {
  if (dim < 2) throw ValidationError("Fock truncation needs dim >= 2");
  if (dim > max_dim) {
    throw ValidationError(fmt::format("Fock truncation {} exceeds the supported maximum {}", dim,
                                      max_dim));
  }
}

FockVector finish_probe(FockVector psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw LeakageError(fmt::format(
        "probe loses {:.3e} of its norm at dim {}; raise the truncation", 1.0 - norm, psi.size()));
  }
  psi /= norm;
  check_leakage(psi, "probe preparation");
  return psi;
}

}  // namespace

MatrixOperator matrix_of(const LadderPolynomial& poly, int dim, int max_dim) {
  require_dim(dim, max_dim);
  MatrixOperator m = MatrixOperator::Zero(dim, dim);
  // sqrt_ratio[k][l] style products: ⟨k+m| a†^m |k⟩ = √((k+m)!/k!).
  auto raise = [](int from, int steps) {
    double v = 1.0;
    for (int l = from + 1; l <= from + steps; ++l) v *= std::sqrt(static_cast<double>(l));
    return v;
  };
  for (const auto& [key, c] : poly.terms()) {
    // a†^m a^n |j⟩ = √(j!/(j−n)!) √((j−n+m)!/(j−n)!) |j−n+m⟩
    for (int j = key.annihilation; j < dim; ++j) {
      const int k = j - key.annihilation;
      const int i = k + key.creation;
      if (i >= dim) break;
      m(i, j) += c * raise(k, key.annihilation) * raise(k, key.creation);
    }
  }
  return m;
}

FockVector prepare_probe(const ProbeDescriptor& probe, int dim) {
  require_dim(dim);
  FockVector psi = FockVector::Zero(dim);
  std::visit(
      overloaded{
          [&](const VacuumProbe&) { psi(0) = 1.0; },
          [&](const CoherentProbe& c) {
            psi(0) = std::exp(-0.5 * std::norm(c.alpha));
            for (int n = 1; n < dim; ++n) {
              psi(n) = psi(n - 1) * c.alpha / std::sqrt(static_cast<double>(n));
            }
          },
          [&](const SqueezedVacuumProbe& s) {
            const Complex ratio = -std::polar(std::tanh(s.r), s.phi);
            psi(0) = 1.0 / std::sqrt(std::cosh(s.r));
            for (int n = 1; 2 * n < dim; ++n) {
              psi(2 * n) = psi(2 * n - 2) * ratio *
                           std::sqrt(static_cast<double>(2 * n - 1) / static_cast<double>(2 * n));
            }
          },
          [&](const FockProbe& f) {
            for (std::size_t n = 0; n < f.amplitudes.size(); ++n) {
              if (static_cast<int>(n) < dim) {
                psi(static_cast<Eigen::Index>(n)) = f.amplitudes[n];
              } else if (std::abs(f.amplitudes[n]) > 0.0) {
                throw LeakageError(
                    fmt::format("explicit probe has amplitude on level {} beyond dim {}", n, dim));
              }
            }
          }},
      probe);
  return finish_probe(std::move(psi));
}

void check_leakage(const FockVector& psi, const char* context) {
  const double pop = last_level_population(psi);
  if (pop > kLeakageTolerance) {
    throw LeakageError(fmt::format("{}: last-level population {:.3e} at dim {} exceeds {:.0e}",
                                   context, pop, psi.size(), kLeakageTolerance));
  }
}

Propagator::Propagator(const MatrixOperator& hamiltonian) {
  if (!is_hermitian_matrix(hamiltonian)) {
    throw ValidationError("propagator needs a Hermitian generator");
  }
  Eigen::SelfAdjointEigenSolver<MatrixOperator> eig(hamiltonian);
  if (eig.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
  vectors_ = eig.eigenvectors();
  values_ = eig.eigenvalues();
}

MatrixOperator Propagator::unitary(double t) const {
  const Eigen::VectorXcd phases =
      (values_.cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

FockVector Propagator::apply(const FockVector& psi, double t) const {
  const Eigen::VectorXcd phases =
      (values_.cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return vectors_ * (phases.asDiagonal() * (vectors_.adjoint() * psi));
}

FockVector evolve_unitary(const FockVector& psi, const MatrixOperator& hamiltonian, double t) {
  if (psi.size() != hamiltonian.rows()) throw ValidationError("state and operator dims differ");
  if (t == 0.0) return psi;
  FockVector out = Propagator(hamiltonian).apply(psi, t);
  check_leakage(out, "evolve_unitary");
  return out;
}

double variance(const FockVector& psi, const MatrixOperator& op) {
  const FockVector o_psi = op * psi;
  const double mean = psi.dot(o_psi).real();
  return std::max(0.0, o_psi.squaredNorm() - mean * mean);
}

double pure_state_qfi(const FockVector& psi, const FockVector& dpsi) {
  return 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

double mixed_state_qfi(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  const Eigen::VectorXd& w = eig.eigenvalues();
  const Eigen::MatrixXcd d = v.adjoint() * drho * v;
  double f = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      const double s = w(i) + w(j);
      if (s > 1e-10) f += 2.0 * std::norm(d(i, j)) / s;
    }
  }
  return f;
}

namespace {

// Shared pieces for repeated evaluation of |Ψ_λ⟩ at one dimension.
class ProtocolEvaluator {
 public:
  ProtocolEvaluator(const EncodingProtocol& p, int dim)
      : n_(p.n), lambda_prop_(matrix_of(p.h_lambda, dim)) {
    p.validate();
    FockVector psi0 = prepare_probe(p.probe, dim);
    after_g_ = p.g_bar == 0.0 ? psi0
                              : Propagator(matrix_of(p.h_g, dim)).apply(psi0, p.n * p.g_bar);
    check_leakage(after_g_, "auxiliary gates");
  }

  FockVector state(double lambda) const {
    return lambda_prop_.apply(after_g_, n_ * lambda);
  }

 private:
  int n_;
  Propagator lambda_prop_;
  FockVector after_g_;
};

}  // namespace

FockVector run_protocol_fock(const EncodingProtocol& protocol, int dim) {
  require_dim(dim);
  FockVector out = ProtocolEvaluator(protocol, dim).state(protocol.lambda_bar);
  check_leakage(out, "run_protocol_fock");
  return out;
}

FockMoments quadrature_moments(const FockVector& psi) {
  const int dim = static_cast<int>(psi.size());
  const auto x = LadderPolynomial::position();
  const auto p = LadderPolynomial::momentum();
  const double mx = expectation(psi, matrix_of(x, dim)).real();
  const double mp = expectation(psi, matrix_of(p, dim)).real();
  const double xx = expectation(psi, matrix_of(x * x, dim)).real();
  const double pp = expectation(psi, matrix_of(p * p, dim)).real();
  const double sym = expectation(psi, matrix_of(x * p + p * x, dim)).real();
  FockMoments out;
  out.mean << mx, mp;
  out.cov << xx - mx * mx, 0.5 * sym - mx * mp, 0.5 * sym - mx * mp, pp - mp * mp;
  return out;
}

NumericQfi qfi_numeric(const EncodingProtocol& protocol, int dim, double step) {
  require_dim(dim);
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  const ProtocolEvaluator eval(protocol, dim);
  const double lambda = protocol.lambda_bar;
  const FockVector psi = eval.state(lambda);
  check_leakage(psi, "qfi_numeric");

  auto central = [&](double h) {
    const FockVector plus = eval.state(lambda + h);
    const FockVector minus = eval.state(lambda - h);
    check_leakage(plus, "qfi_numeric");
    check_leakage(minus, "qfi_numeric");
    return pure_state_qfi(psi, (plus - minus) / (2.0 * h));
  };

  NumericQfi out;
  out.dim = dim;
  out.coarse = central(step);
  out.fine = central(0.5 * step);
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  out.pass_gap = std::abs(out.coarse - out.fine) / std::max(std::abs(out.fine), 1e-12);
  out.passes_agree = out.pass_gap <= kPassFlagGap;
  if (out.pass_gap > kPassErrorGap) {
    throw ConvergenceError(fmt::format(
        "finite-difference passes disagree by {:.2f}% (step {:g}, dim {})", 100.0 * out.pass_gap,
        step, dim));
  }
  return out;
}

NumericQfi qfi_numeric_converged(const EncodingProtocol& protocol, int dim, double step,
                                 int max_dim) {
  std::optional<NumericQfi> previous;
  for (int d = dim; d <= max_dim; d *= 2) {
    NumericQfi current;
    try {
      current = qfi_numeric(protocol, d, step);
    } catch (const LeakageError&) {
      previous.reset();
      continue;
    }
    if (previous) {
      const double change =
          std::abs(current.value - previous->value) / std::max(std::abs(current.value), 1e-12);
      if (change < kDimensionAgreement) {
        current.dim_converged = true;
        return current;
      }
    }
    previous = current;
  }
  throw TruncationError(
      fmt::format("numeric QFI did not stabilize under dimension doubling up to {}", max_dim));
}

}  // namespace ncmetro
