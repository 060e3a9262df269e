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

#include <vector>

#include "ncmetro/fock.hpp"
#include "ncmetro/ladder_polynomial.hpp"
#include "ncmetro/nilpotency.hpp"
#include "ncmetro/protocol.hpp"

namespace ncmetro {

struct GeneratorResult {
  /// ĥ_λ̄ = i Û† ∂_λ̄ Û.
  LadderPolynomial generator;
  /// Tower entries summed (K+1 for finite pairs, 3 for the closed form).
  int truncation_used = 0;
  bool closed_form = false;
};

/// Local generator of λ̄ for a classified pair.
///
/// Finite kinds: N Σ_{n=0}^{K} (iNḡ)^n/n! · tower[n].
/// ClosedInfinite(p): N Ĥ_λ + N sinh(Nḡ√p)/√p · iĈ + N (1 − cosh(Nḡ√p))/p · D̂.
/// CapReached throws UnclassifiedPairError; a non-Hermitian result throws
/// ConsistencyError.
GeneratorResult local_generator(const EncodingProtocol& protocol, const NilpotencyReport& report);

/// Classifies (h_g, h_lambda) with the default cap, then builds the generator.
GeneratorResult local_generator(const EncodingProtocol& protocol);

/// Partial sums of the generator series up to `order`, evaluated directly
/// from adjoint powers. Converges to the closed form for ClosedInfinite pairs.
LadderPolynomial generator_series(const EncodingProtocol& protocol, int order);

/// Largest working dimension of the conjugation oracle. Above the Fock cap
/// because certifying the squeezing pair at |Nḡ| = 0.8 needs agreement
/// between W = 1280 and W = 2048.
inline constexpr int kMaxConjugationDim = 2048;

struct ConjugationOptions {
  /// Max-entry agreement required between working dimensions W and 2W on
  /// the tested sub-block, scaled by max(1, largest entry).
  double tolerance = 1e-10;
  int max_working_dim = kMaxConjugationDim;
  /// Rows/cols of the leading block that must converge; 0 means dim/2.
  int certified_block = 0;
};

/// N exp(iNḡĤ_g) Ĥ_λ exp(−iNḡĤ_g) as a dim × dim matrix in the Fock basis.
///
/// The conjugation is evaluated on working dimensions W = dim, 2·dim, 4·dim,
/// …, with the last step clipped to `max_working_dim`, and the leading
/// dim × dim block returned once two successive working dimensions agree on
/// the certified sub-block (rows/cols < dim/2 by default). Throws
/// TruncationError if that never happens below `max_working_dim`.
MatrixOperator generator_by_conjugation(const EncodingProtocol& protocol, int dim,
                                        const ConjugationOptions& options = {});

/// 4 N^{2(1+K)} / (K!)² · ḡ^{2K} · var_k.
double leading_qfi_coefficient(int k, int n, double g_bar, double var_k);

/// ln(N^{2(1+K)} / (K!)²).
double log_leading_coefficient(int n, int k);

/// All K in [0, k_max] maximizing N^{2(1+K)}/(K!)², ties included,
/// compared in log space.
std::vector<int> k_peak(int n, int k_max);

/// 1/√(ν F).
double qcrb_rmse(double qfi, int nu);

}  // namespace ncmetro
