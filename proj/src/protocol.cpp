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

#include "ncmetro/protocol.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string describe(const ProbeDescriptor& probe) {
  return std::visit(
      overloaded{
          [](const VacuumProbe&) { return std::string("vacuum"); },
          [](const CoherentProbe& c) {
            return fmt::format("coherent(alpha={:.17g}{:+.17g}i)", c.alpha.real(), c.alpha.imag());
          },
          [](const SqueezedVacuumProbe& s) {
            return fmt::format("squeezed(r={:.17g},phi={:.17g})", s.r, s.phi);
          },
          [](const FockProbe& f) { return fmt::format("fock({} amplitudes)", f.amplitudes.size()); }},
      probe);
}

void EncodingProtocol::validate() const {
  if (n < 1) throw ValidationError("protocol needs N >= 1");
  if (h_lambda.is_zero() || h_g.is_zero()) throw ValidationError("protocol generators must be nonzero");
  if (!is_hermitian(h_lambda, 1e-10)) throw ValidationError("H_lambda is not Hermitian");
  if (!is_hermitian(h_g, 1e-10)) throw ValidationError("H_g is not Hermitian");
  if (!std::isfinite(lambda_bar) || !std::isfinite(g_bar)) {
    throw ValidationError("protocol parameters must be finite");
  }
  if (const auto* f = std::get_if<FockProbe>(&probe)) {
    double norm2 = 0.0;
    for (const auto& c : f->amplitudes) norm2 += std::norm(c);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) {
      throw ValidationError("explicit probe amplitudes are not normalized");
    }
  }
}

EncodingProtocol shearing_protocol(int n, double s_bar, double x_bar, ProbeDescriptor probe) {
  const auto x = LadderPolynomial::position();
  return {LadderPolynomial::momentum(), x * x, n, x_bar, s_bar, std::move(probe)};
}

EncodingProtocol squeezing_protocol(int n, double xi_bar, double x_bar, ProbeDescriptor probe) {
  const auto g = LadderPolynomial::monomial(2, 0) + LadderPolynomial::monomial(0, 2);
  return {LadderPolynomial::momentum(), g, n, x_bar, xi_bar / 2.0, std::move(probe)};
}

EncodingProtocol constant_commutator_protocol(int n, double g_bar, double x_bar,
                                              ProbeDescriptor probe) {
  return {LadderPolynomial::momentum(), LadderPolynomial::position(), n, x_bar, g_bar,
          std::move(probe)};
}

}  // namespace ncmetro
