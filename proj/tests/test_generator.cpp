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

#include <doctest.h>

#include <cmath>
#include <random>

#include "ncmetro/errors.hpp"
#include "ncmetro/fock.hpp"
#include "ncmetro/generator.hpp"
#include "ncmetro/nilpotency.hpp"
#include "support.hpp"

using namespace ncmetro;

namespace {

LadderPolynomial X() { return LadderPolynomial::position(); }
LadderPolynomial P() { return LadderPolynomial::momentum(); }

double block_difference(const LadderPolynomial& a, const LadderPolynomial& b, int dim) {
  return (matrix_of(a, dim) - matrix_of(b, dim)).cwiseAbs().maxCoeff();
}

// log(N^{2(1+K)}/(K!)²) through repeated multiplication, independent of lgamma.
double slow_log_coefficient(int n, int k) {
  double log_fact = 0.0;
  for (int j = 2; j <= k; ++j) log_fact += std::log(static_cast<double>(j));
  return 2.0 * (1 + k) * std::log(static_cast<double>(n)) - 2.0 * log_fact;
}

}  // namespace

TEST_CASE("shearing generator is N P - 2 N^2 s X") {
  for (int n = 1; n <= 64; n *= 2) {
    for (double s : {-0.3, 0.05, 0.2}) {
      const GeneratorResult r = local_generator(shearing_protocol(n, s));
      const LadderPolynomial want = static_cast<double>(n) * P() - 2.0 * n * n * s * X();
      CHECK(max_abs_difference(r.generator, want) <= 1e-12 * n * n);
      CHECK_FALSE(r.closed_form);
      CHECK(r.truncation_used == 2);
      CHECK(is_hermitian(r.generator));
    }
  }
}

TEST_CASE("squeezing generator is -N sinh(N xi) X + N cosh(N xi) P") {
  for (int n = 1; n <= 12; ++n) {
    for (double xi : {-0.2, 0.1, 0.25}) {
      const GeneratorResult r = local_generator(squeezing_protocol(n, xi));
      const LadderPolynomial want =
          -n * std::sinh(n * xi) * X() + n * std::cosh(n * xi) * P();
      CHECK(max_abs_difference(r.generator, want) <= 1e-12 * std::max(1.0, max_abs_coefficient(want)));
      CHECK(r.closed_form);
      CHECK(is_hermitian(r.generator));
    }
  }
}

TEST_CASE("constant commutator generator is N P - N^2 g") {
  const GeneratorResult r = local_generator(constant_commutator_protocol(5, 0.1));
  CHECK(max_abs_difference(r.generator, 5.0 * P() - LadderPolynomial::scalar(2.5)) < 1e-14);
}

TEST_CASE("series partial sums converge to the closed form") {
  for (int n : {1, 3, 4}) {
    for (double xi : {-0.4, 0.4}) {
      const EncodingProtocol proto = squeezing_protocol(n, xi);
      const LadderPolynomial closed = local_generator(proto).generator;
      double previous = block_difference(generator_series(proto, 2), closed, 20);
      for (int order = 4; order <= 40; order += 2) {
        const double gap = block_difference(generator_series(proto, order), closed, 20);
        CHECK(gap <= previous + 1e-12);
        previous = gap;
      }
      CHECK(previous < 1e-8);
    }
  }
}

TEST_CASE("series and conjugation agree on the low-energy block") {
  const int dim = 40;
  for (int n : {1, 4}) {
    for (double g : {-0.2, 0.2}) {
      for (const EncodingProtocol& proto :
           {shearing_protocol(n, g), squeezing_protocol(n, 2.0 * g),
            constant_commutator_protocol(n, g)}) {
        const MatrixOperator series = matrix_of(local_generator(proto).generator, dim);
        const MatrixOperator conj = generator_by_conjugation(proto, dim);
        const double scale = std::max(1.0, series.cwiseAbs().maxCoeff());
        CHECK((series - conj).topLeftCorner(dim / 2, dim / 2).cwiseAbs().maxCoeff() / scale <
              1e-8);
        CHECK(is_hermitian_matrix(conj));
      }
    }
  }
}

TEST_CASE("conjugation validates its dimension") {
  CHECK_THROWS_AS(generator_by_conjugation(shearing_protocol(1, 0.1), 4), ValidationError);
  CHECK_THROWS_AS(generator_by_conjugation(shearing_protocol(1, 0.1), 4096), ValidationError);
  ConjugationOptions too_big;
  too_big.certified_block = 41;
  CHECK_THROWS_AS(generator_by_conjugation(shearing_protocol(1, 0.1), 40, too_big), ValidationError);
}

TEST_CASE("conjugation reports an uncertifiable block") {
  ConjugationOptions tight;
  tight.max_working_dim = 80;
  CHECK_THROWS_AS(generator_by_conjugation(squeezing_protocol(4, 0.4), 40, tight), TruncationError);
}

TEST_CASE("stored tower entries equal adjoint powers") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 40; ++trial) {
    const LadderPolynomial g = testing_support::random_hermitian(rng, 2);
    const LadderPolynomial h = testing_support::random_hermitian(rng, 3);
    const NilpotencyReport report = classify_pair(g, h, 6);
    for (std::size_t n = 0; n < report.tower.size(); ++n) {
      CHECK(max_abs_difference(report.tower[n], adjoint_power(g, h, static_cast<int>(n))) <=
            1e-12 * std::max(1.0, max_abs_coefficient(report.tower[n])));
    }
  }
}

TEST_CASE("generators of finite pairs are Hermitian") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // g quadratic without number term keeps many towers finite or closed
    const LadderPolynomial g = testing_support::random_hermitian(rng, 2);
    const LadderPolynomial h = testing_support::random_hermitian(rng, 2);
    EncodingProtocol proto{h, g, 1 + trial % 4, 0.0, 0.05};
    try {
      const GeneratorResult r = local_generator(proto);
      CHECK(is_hermitian(r.generator, 1e-10));
      ++checked;
    } catch (const UnclassifiedPairError&) {
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("unclassified pairs are rejected") {
  EncodingProtocol proto{X(), LadderPolynomial::number(), 2, 0.0, 0.1};
  CHECK_THROWS_AS(local_generator(proto), UnclassifiedPairError);
}

TEST_CASE("k_peak is the tie {N-1, N}") {
  for (int n = 2; n <= 30; ++n) {
    CHECK(k_peak(n, 40) == std::vector<int>{n - 1, n});
  }
  CHECK(k_peak(1, 10) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(k_peak(30, 12), ValidationError);
}

TEST_CASE("leading coefficient") {
  for (int n : {1, 2, 7, 30}) {
    for (int k : {0, 1, 4, 6}) {
      CHECK(log_leading_coefficient(n, k) == doctest::Approx(slow_log_coefficient(n, k)).epsilon(1e-13));
      const double want = 4.0 * std::exp(slow_log_coefficient(n, k)) * std::pow(0.3, 2 * k) * 0.5;
      CHECK(leading_qfi_coefficient(k, n, 0.3, 0.5) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("qcrb") {
  CHECK(qcrb_rmse(4.0, 1) == doctest::Approx(0.5));
  CHECK(qcrb_rmse(100.0, 4) == doctest::Approx(0.05));
}
