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
#include <random>

#include "ncmetro/ladder_polynomial.hpp"

namespace testing_support {

using ncmetro::Complex;
using ncmetro::LadderPolynomial;

/// Random Hermitian polynomial with every monomial of degree ≤ max_degree
/// present with probability 1/2, coefficients uniform in [-1, 1].
inline LadderPolynomial random_hermitian(std::mt19937_64& rng, int max_degree = 4) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::bernoulli_distribution keep(0.5);
  LadderPolynomial p;
  for (int m = 0; m <= max_degree; ++m) {
    for (int n = 0; n <= m && m + n <= max_degree; ++n) {
      if (!keep(rng)) continue;
      if (m == n) {
        p.add_term({m, n}, coef(rng));
      } else {
        const Complex c{coef(rng), coef(rng)};
        p.add_term({m, n}, c);
        p.add_term({n, m}, std::conj(c));
      }
    }
  }
  if (p.is_zero()) p.add_term({1, 1}, 1.0);
  return p;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testing_support
