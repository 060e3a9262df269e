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

#include "ncmetro/errors.hpp"
#include "ncmetro/operator_parser.hpp"

using namespace ncmetro;

namespace {

bool same(const LadderPolynomial& a, const LadderPolynomial& b) {
  return max_abs_difference(a, b) < 1e-14;
}

std::size_t error_position(const char* text) {
  try {
    parse_operator(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("symbols") {
  CHECK(same(parse_operator("a"), LadderPolynomial::annihilation()));
  CHECK(same(parse_operator("ad"), LadderPolynomial::creation()));
  CHECK(same(parse_operator("X"), LadderPolynomial::position()));
  CHECK(same(parse_operator("P"), LadderPolynomial::momentum()));
  CHECK(same(parse_operator("i"), LadderPolynomial::scalar({0.0, 1.0})));
}

TEST_CASE("arithmetic and ordering") {
  CHECK(same(parse_operator("ada"), LadderPolynomial::number()));
  CHECK(same(parse_operator("ad a"), LadderPolynomial::number()));
  CHECK(same(parse_operator("a*ad"), LadderPolynomial::number() + LadderPolynomial::identity()));
  CHECK(same(parse_operator("ad^2 + a^2"), parse_operator("X^2 - P^2")));
  CHECK(same(parse_operator("2iX"), Complex{0.0, 2.0} * LadderPolynomial::position()));
  CHECK(same(parse_operator("(X + P)^2"), parse_operator("X^2 + X*P + P*X + P^2")));
  CHECK(same(parse_operator("-X + -(-P)"), parse_operator("P - X")));
  CHECK(same(parse_operator("0.5*X^2 + 1e-1*P"), parse_operator("0.5 X^2 + 0.1 P")));
  CHECK(same(parse_operator("X^0"), LadderPolynomial::identity()));
  CHECK(same(parse_operator("  X ^ 2 "), parse_operator("X^2")));
}

TEST_CASE("error positions") {
  CHECK(error_position("X^^2") == 2);
  CHECK(error_position("Q") == 0);
  CHECK(error_position("X + ") == 4);
  CHECK(error_position("(X + P") == 6);
  CHECK(error_position("X^-1") == 2);
  CHECK(error_position("X^1.5") == 2);
  CHECK(error_position("") == 0);
  CHECK(error_position("X)") == 1);
  CHECK_THROWS_AS(parse_operator("X^40 * P^40"), DegreeLimitError);
}
