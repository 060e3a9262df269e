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

#include <string>
#include <variant>
#include <vector>

#include "ncmetro/ladder_polynomial.hpp"

namespace ncmetro {

struct VacuumProbe {};

/// D̂(α)|0⟩, so ⟨X̂⟩ = √2 Re α and ⟨P̂⟩ = √2 Im α.
struct CoherentProbe {
  Complex alpha;
};

/// exp(½(ζ* â² − ζ â†²))|0⟩ with ζ = r e^{iφ}; φ = 0 squeezes X̂.
struct SqueezedVacuumProbe {
  double r = 0.0;
  double phi = 0.0;
};

/// Explicit Fock amplitudes c_n, normalized to 1 within 1e-10.
struct FockProbe {
  std::vector<Complex> amplitudes;
};

using ProbeDescriptor = std::variant<VacuumProbe, CoherentProbe, SqueezedVacuumProbe, FockProbe>;

std::string describe(const ProbeDescriptor& probe);

/// One encoding experiment: N gates exp(−i ḡ Ĥ_g) followed by N gates
/// exp(−i λ̄ Ĥ_λ), acting on `probe`.
///
/// `g_bar` is the full coefficient of Ĥ_g in each gate's exponent. Written
/// prefactors are absorbed here: the squeezing gate
/// exp(−i(ξ/2)(â†² + â²)) has g_bar = ξ/2.
struct EncodingProtocol {
  LadderPolynomial h_lambda;
  LadderPolynomial h_g;
  int n = 1;
  double lambda_bar = 0.0;
  double g_bar = 0.0;
  ProbeDescriptor probe = VacuumProbe{};

  /// Throws ValidationError unless both generators are Hermitian and n ≥ 1.
  void validate() const;
};

/// Ĥ_g = X̂², Ĥ_λ = P̂; nilpotency index 1.
EncodingProtocol shearing_protocol(int n, double s_bar, double x_bar = 0.0,
                                   ProbeDescriptor probe = VacuumProbe{});

/// Ĥ_g = â†² + â², Ĥ_λ = P̂, with g_bar = ξ̄/2.
EncodingProtocol squeezing_protocol(int n, double xi_bar, double x_bar = 0.0,
                                    ProbeDescriptor probe = VacuumProbe{});

/// Ĥ_g = X̂, Ĥ_λ = P̂; the first commutator is the constant i.
EncodingProtocol constant_commutator_protocol(int n, double g_bar, double x_bar = 0.0,
                                              ProbeDescriptor probe = VacuumProbe{});

}  // namespace ncmetro
