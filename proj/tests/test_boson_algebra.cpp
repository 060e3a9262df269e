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

#include <random>

#include "ncmetro/errors.hpp"
#include "ncmetro/fock.hpp"
#include "ncmetro/ladder_polynomial.hpp"
#include "ncmetro/nilpotency.hpp"
#include "oracles/naive_ordering.hpp"
#include "support.hpp"

using namespace ncmetro;

namespace {

const Complex I{0.0, 1.0};

LadderPolynomial X() { return LadderPolynomial::position(); }
LadderPolynomial P() { return LadderPolynomial::momentum(); }
LadderPolynomial ad() { return LadderPolynomial::creation(); }
LadderPolynomial a() { return LadderPolynomial::annihilation(); }

}  // namespace

TEST_CASE("canonical construction") {
  const LadderPolynomial n = LadderPolynomial::number();
  CHECK(n.size() == 1);
  CHECK(n.coefficient(1, 1) == Complex{1.0});
  CHECK(n.degree() == 2);
  CHECK(LadderPolynomial().degree() == -1);
  CHECK(LadderPolynomial().scalar_value() == Complex{0.0});
  CHECK(LadderPolynomial::scalar(2.5).is_scalar());
  CHECK_FALSE(X().is_scalar());
  CHECK_FALSE(X().scalar_value().has_value());

  LadderPolynomial p;
  p.add_term({2, 0}, 1e-13);
  CHECK(p.is_zero());
  p.add_term({2, 0}, 0.5);
  p.add_term({2, 0}, -0.5);
  CHECK(p.is_zero());
}

TEST_CASE("a a† is normal ordered to a†a + 1") {
  const LadderPolynomial p = a() * ad();
  CHECK(p.coefficient(1, 1) == Complex{1.0});
  CHECK(p.coefficient(0, 0) == Complex{1.0});
  CHECK(p.size() == 2);
  CHECK(commutator(a(), ad()) == LadderPolynomial::identity());
}

TEST_CASE("quadrature commutators") {
  CHECK(max_abs_difference(commutator(X(), P()), LadderPolynomial::scalar(I)) < 1e-15);
  const LadderPolynomial x2 = X() * X();
  CHECK(max_abs_difference(commutator(x2, P()), 2.0 * I * X()) < 1e-15);
  const LadderPolynomial d = x2 - P() * P();
  CHECK(max_abs_difference(commutator(d, 2.0 * I * X()), -4.0 * P()) < 1e-15);
  // X² − P² is the squeezing generator ad² + a².
  CHECK(max_abs_difference(d, ad() * ad() + a() * a()) < 1e-15);
}

TEST_CASE("product matches the rewriting oracle on all monomials up to degree 3 per side") {
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      for (int r = 0; r <= 3; ++r) {
        for (int s = 0; s <= 3; ++s) {
          const LadderPolynomial got =
              LadderPolynomial::monomial(m, n) * LadderPolynomial::monomial(r, s);
          const auto want = oracle::normal_order(oracle::word(m, n) + oracle::word(r, s));
          LadderPolynomial expected;
          for (const auto& [k, v] : want) {
            expected.add_term({k.first, k.second}, static_cast<double>(v));
          }
          INFO("m=" << m << " n=" << n << " r=" << r << " s=" << s);
          CHECK(got == expected);
        }
      }
    }
  }
}

TEST_CASE("products agree with truncated matrices on the exact block") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing_support::random_hermitian(rng, 3);
    const auto q = testing_support::random_hermitian(rng, 3);
    const int d = 12;
    const int big = d + 6;
    const MatrixOperator lhs = matrix_of(p * q, d);
    const MatrixOperator rhs = (matrix_of(p, big) * matrix_of(q, big)).topLeftCorner(d, d);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("adjoint reverses products") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    LadderPolynomial p = testing_support::random_hermitian(rng, 3);
    LadderPolynomial q = testing_support::random_hermitian(rng, 3);
    p += Complex{0.0, 0.3} * LadderPolynomial::monomial(2, 1);
    CHECK(max_abs_difference(adjoint(p * q), adjoint(q) * adjoint(p)) < 1e-12);
    CHECK(adjoint(adjoint(p)) == p);
  }
  CHECK(is_hermitian(X()));
  CHECK_FALSE(is_hermitian(a()));
}

TEST_CASE("Jacobi identity and antisymmetry on random Hermitian polynomials") {
  std::mt19937_64 rng(424242);
  double worst_jacobi = 0.0;
  double worst_anti = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing_support::random_hermitian(rng);
    const auto q = testing_support::random_hermitian(rng);
    const auto r = testing_support::random_hermitian(rng);
    const LadderPolynomial jacobi = commutator(p, commutator(q, r)) +
                                    commutator(q, commutator(r, p)) +
                                    commutator(r, commutator(p, q));
    const LadderPolynomial anti = commutator(p, q) + commutator(q, p);
    worst_jacobi = std::max(worst_jacobi, max_abs_coefficient(jacobi));
    worst_anti = std::max(worst_anti, max_abs_coefficient(anti));
  }
  CHECK(worst_jacobi <= 1e-12);
  CHECK(worst_anti <= 1e-12);
}

TEST_CASE("commutator of Hermitian operators is anti-Hermitian") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testing_support::random_hermitian(rng);
    const auto q = testing_support::random_hermitian(rng);
    CHECK(is_hermitian(Complex{0.0, 1.0} * commutator(p, q), 1e-12));
  }
}

TEST_CASE("degree limit") {
  CHECK_THROWS_AS(normal_order_product(power(X(), 5), power(P(), 5), 8), DegreeLimitError);
  CHECK_NOTHROW(normal_order_product(power(X(), 4), power(P(), 4), 8));
  CHECK_THROWS_AS(power(X(), 65), DegreeLimitError);
}

TEST_CASE("adjoint powers") {
  CHECK(adjoint_power(X() * X(), P(), 0) == P());
  CHECK(max_abs_difference(adjoint_power(X() * X(), P(), 1), 2.0 * I * X()) < 1e-15);
  CHECK(adjoint_power(X() * X(), P(), 2).is_zero());
}

TEST_CASE("classification of the reference pairs") {
  SUBCASE("shearing pair is Finite(1)") {
    const auto r = classify_pair(X() * X(), P());
    REQUIRE(std::holds_alternative<Finite>(r.classification));
    CHECK(r.index() == 1);
    CHECK(r.tower.size() == 2);
  }
  SUBCASE("(X, P) is FiniteConstant(1, i)") {
    const auto r = classify_pair(X(), P());
    REQUIRE(std::holds_alternative<FiniteConstant>(r.classification));
    const auto& fc = std::get<FiniteConstant>(r.classification);
    CHECK(fc.index == 1);
    CHECK(std::abs(fc.value - I) < 1e-15);
  }
  SUBCASE("squeezing pair closes with p = 4") {
    const auto r = classify_pair(ad() * ad() + a() * a(), P());
    REQUIRE(std::holds_alternative<ClosedInfinite>(r.classification));
    CHECK(std::abs(std::get<ClosedInfinite>(r.classification).p - 4.0) < 1e-10);
    REQUIRE(r.tower.size() == 3);
    CHECK(max_abs_difference(r.tower[1], 2.0 * I * X()) < 1e-14);
    CHECK(max_abs_difference(r.tower[2], -4.0 * P()) < 1e-14);
  }
  SUBCASE("higher finite indices") {
    CHECK(classify_pair(X() * X(), P() * P()).index() == 2);
    CHECK(classify_pair(X() * X(), power(P(), 3)).index() == 3);
    CHECK(classify_pair(X() * X(), power(P(), 5)).index() == 5);
  }
  SUBCASE("commuting pair is Finite(0)") {
    const auto r = classify_pair(X(), X() * X());
    CHECK(r.index() == 0);
  }
  SUBCASE("rotation never terminates or closes with p > 0") {
    const auto r = classify_pair(LadderPolynomial::number(), X(), 12);
    CHECK(std::holds_alternative<CapReached>(r.classification));
    CHECK(r.tower.size() == 13);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(classify_pair(LadderPolynomial(), P()), ValidationError);
    CHECK_THROWS_AS(classify_pair(X(), P(), 1), ValidationError);
  }
}

TEST_CASE("string form") {
  CHECK(LadderPolynomial::number().to_string() == "1*ad*a");
  CHECK(LadderPolynomial().to_string() == "0");
}
