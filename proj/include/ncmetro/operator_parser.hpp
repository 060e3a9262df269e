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

#include <string_view>

#include "ncmetro/ladder_polynomial.hpp"

namespace ncmetro {

/// Parses a single-mode operator expression into canonical form.
///
/// Grammar (whitespace ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (['*'] unary)*          juxtaposition multiplies
///     unary   := ('+' | '-') unary | power
///     power   := primary ('^' integer)?
///     primary := number | 'a' | 'ad' | 'X' | 'P' | 'i' | '(' expr ')'
///
/// `a` is the annihilation operator, `ad` the creation operator,
/// X = (ad + a)/√2, P = i(ad − a)/√2, `i` the imaginary unit. Numbers are
/// decimal with an optional exponent (`2`, `0.5`, `1e-3`). Products are
/// normal ordered, so operator order matters: `a*ad` is `ad*a + 1`.
///
/// Throws ParseError carrying the 0-based offset of the offending token.
LadderPolynomial parse_operator(std::string_view text, int max_degree = kDefaultMaxDegree);

}  // namespace ncmetro
