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

#include "ncmetro/generator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

constexpr double kGeneratorHermiticity = 1e-10;
constexpr double kPeakTieTolerance = 1e-9;

GeneratorResult checked(GeneratorResult r) {
  const double scale = std::max(1.0, max_abs_coefficient(r.generator));
  if (!is_hermitian(r.generator, kGeneratorHermiticity * scale)) {
    throw ConsistencyError("local generator is not Hermitian: " + r.generator.to_string());
  }
  return r;
}

struct Eigensystem {
  Eigen::VectorXd values;
  MatrixOperator vectors;
};

// Splits by Fock parity when `g` conserves it and uses the real solver on
// real blocks; both cut the cost of the large working dimensions.
Eigensystem hermitian_eigensystem(const MatrixOperator& g) {
  const Eigen::Index w = g.rows();
  bool conserves_parity = true;
  for (Eigen::Index j = 0; j < w && conserves_parity; ++j) {
    for (Eigen::Index i = (j + 1) % 2; i < w; i += 2) {
      if (g(i, j) != Complex{}) {
        conserves_parity = false;
        break;
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> classes;
  if (conserves_parity) {
    classes.resize(2);
    for (Eigen::Index i = 0; i < w; ++i) classes[i % 2].push_back(i);
  } else {
    classes.emplace_back(w);
    for (Eigen::Index i = 0; i < w; ++i) classes[0][i] = i;
  }

  Eigensystem out{Eigen::VectorXd(w), MatrixOperator::Zero(w, w)};
  Eigen::Index col = 0;
  for (const auto& idx : classes) {
    const MatrixOperator sub = g(idx, idx);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXd values;
    MatrixOperator vectors;
    if (sub.imag().isZero(0.0)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sub.real());
      if (eig.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
      values = eig.eigenvalues();
      vectors = eig.eigenvectors().cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<MatrixOperator> eig(sub);
      if (eig.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
      values = eig.eigenvalues();
      vectors = eig.eigenvectors();
    }
    out.values.segment(col, m) = values;
    for (Eigen::Index r = 0; r < m; ++r) out.vectors.row(idx[r]).segment(col, m) = vectors.row(r);
    col += m;
  }
  return out;
}

// Rows [0, dim) of exp(iT G) at working dimension W, then the block
// (U H U†)[0:dim, 0:dim].
MatrixOperator conjugated_block(const EncodingProtocol& p, int dim, int working_dim) {
  const MatrixOperator g = matrix_of(p.h_g, working_dim, working_dim);
  const MatrixOperator h = matrix_of(p.h_lambda, working_dim, working_dim);
  const double t = p.n * p.g_bar;
  const Eigensystem eig = hermitian_eigensystem(g);
  const Eigen::VectorXcd phases =
      (eig.values.cast<Complex>() * Complex{0.0, t}).array().exp().matrix();
  const MatrixOperator rows = eig.vectors.topRows(dim) * phases.asDiagonal() * eig.vectors.adjoint();
  return static_cast<double>(p.n) * (rows * h * rows.adjoint());
}

}  // namespace

GeneratorResult local_generator(const EncodingProtocol& protocol, const NilpotencyReport& report) {
  protocol.validate();
  const double n = protocol.n;
  const double g = protocol.g_bar;

  if (const auto* closed = std::get_if<ClosedInfinite>(&report.classification)) {
    const double sqrt_p = std::sqrt(closed->p);
    const double arg = n * g * sqrt_p;
    const LadderPolynomial& h = report.tower.at(0);
    const LadderPolynomial& c = report.tower.at(1);
    const LadderPolynomial& d = report.tower.at(2);
    LadderPolynomial out = n * h;
    out += Complex{0.0, n * std::sinh(arg) / sqrt_p} * c;
    out += (n * (1.0 - std::cosh(arg)) / closed->p) * d;
    return checked({std::move(out), 3, true});
  }
  if (const auto* cap = std::get_if<CapReached>(&report.classification)) {
    throw UnclassifiedPairError(
        fmt::format("unclassified pair: adjoint tower neither terminated nor closed within {} "
                    "commutators",
                    cap->cap));
  }

  const int k = report.index();
  LadderPolynomial out;
  Complex weight = n;  // N (iNḡ)^j / j!
  for (int j = 0; j <= k; ++j) {
    out += weight * report.tower.at(j);
    weight *= Complex{0.0, n * g} / static_cast<double>(j + 1);
  }
  return checked({std::move(out), k + 1, false});
}

GeneratorResult local_generator(const EncodingProtocol& protocol) {
  return local_generator(protocol, classify_pair(protocol.h_g, protocol.h_lambda));
}

LadderPolynomial generator_series(const EncodingProtocol& protocol, int order) {
  if (order < 0) throw ValidationError("series order must be non-negative");
  const double n = protocol.n;
  LadderPolynomial out;
  LadderPolynomial term = protocol.h_lambda;
  Complex weight = n;
  for (int j = 0; j <= order && !term.is_zero(); ++j) {
    out += weight * term;
    weight *= Complex{0.0, n * protocol.g_bar} / static_cast<double>(j + 1);
    term = commutator(protocol.h_g, term);
  }
  return out;
}

MatrixOperator generator_by_conjugation(const EncodingProtocol& protocol, int dim,
                                        const ConjugationOptions& options) {
  protocol.validate();
  if (dim < 8) throw ValidationError("generator_by_conjugation needs dim >= 8");
  if (dim > options.max_working_dim) {
    throw ValidationError("generator_by_conjugation needs dim <= max_working_dim");
  }
  if (options.certified_block < 0 || options.certified_block > dim) {
    throw ValidationError("certified block must lie in [0, dim]");
  }
  const int tested = options.certified_block > 0 ? options.certified_block : dim / 2;
  std::optional<MatrixOperator> previous;
  double last_gap = 0.0;
  for (int w = dim;; w = std::min(2 * w, options.max_working_dim)) {
    MatrixOperator current = conjugated_block(protocol, dim, w);
    if (previous) {
      const auto a = current.topLeftCorner(tested, tested);
      const auto b = previous->topLeftCorner(tested, tested);
      const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
      last_gap = (a - b).cwiseAbs().maxCoeff() / scale;
      if (last_gap <= options.tolerance) return current;
    }
    if (w == options.max_working_dim) break;
    previous = std::move(current);
  }
  throw TruncationError(fmt::format(
      "conjugated generator not stable on the {}x{} block up to working dimension {} "
      "(last relative gap {:.3e})",
      tested, tested, options.max_working_dim, last_gap));
}

double leading_qfi_coefficient(int k, int n, double g_bar, double var_k) {
  if (k < 0 || n < 1) throw ValidationError("leading coefficient needs K >= 0 and N >= 1");
  if (var_k < 0.0) throw DomainError("variance must be non-negative");
  if (var_k == 0.0 || (k > 0 && g_bar == 0.0)) return 0.0;
  double log_mag = log_leading_coefficient(n, k);
  if (k > 0) log_mag += 2.0 * k * std::log(std::abs(g_bar));
  return 4.0 * std::exp(log_mag) * var_k;
}

double log_leading_coefficient(int n, int k) {
  if (k < 0 || n < 1) throw ValidationError("log coefficient needs K >= 0 and N >= 1");
  return 2.0 * (1.0 + k) * std::log(static_cast<double>(n)) - 2.0 * std::lgamma(k + 1.0);
}

std::vector<int> k_peak(int n, int k_max) {
  if (n < 1) throw ValidationError("k_peak needs N >= 1");
  if (k_max < n + 1) throw ValidationError("k_peak needs k_max >= N + 1");
  std::vector<double> values;
  for (int k = 0; k <= k_max; ++k) values.push_back(log_leading_coefficient(n, k));
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<int> out;
  for (int k = 0; k <= k_max; ++k) {
    if (best - values[k] <= kPeakTieTolerance * std::max(1.0, std::abs(best))) out.push_back(k);
  }
  return out;
}

double qcrb_rmse(double qfi, int nu) {
  if (!(qfi > 0.0)) throw DomainError("QCRB needs a positive QFI");
  if (nu < 1) throw DomainError("QCRB needs at least one repetition");
  return 1.0 / std::sqrt(nu * qfi);
}

}  // namespace ncmetro
