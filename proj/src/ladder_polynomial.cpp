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

#include "ncmetro/ladder_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

bool chops_to_zero(Complex c) { return std::abs(c) <= kChopTolerance; }

// A sum that cancels to rounding level relative to the magnitudes that fed
// it is zero, even when those magnitudes push the residue past the
// absolute chop.
bool cancels_to_zero(Complex sum, double magnitude) {
  return chops_to_zero(sum) || std::abs(sum) <= kCancellationTolerance * magnitude;
}

// C(n,k) C(p,k) k!: the number of ways to contract k annihilators from a^n
// with k creators from a†^p.
double contraction_weight(int n, int p, int k) {
  double w = 1.0;
  for (int j = 0; j < k; ++j) {
    w *= static_cast<double>(n - j) * static_cast<double>(p - j) / static_cast<double>(j + 1);
  }
  return w;
}

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return fmt::format("{:.12g}", c.real());
  if (c.real() == 0.0) return fmt::format("{:.12g}i", c.imag());
  return fmt::format("({:.12g}{:+.12g}i)", c.real(), c.imag());
}

}  // namespace

LadderPolynomial LadderPolynomial::scalar(Complex value) { return monomial(0, 0, value); }

LadderPolynomial LadderPolynomial::monomial(int creation, int annihilation, Complex coefficient) {
  if (creation < 0 || annihilation < 0) {
    throw ValidationError("ladder exponents must be non-negative");
  }
  LadderPolynomial p;
  p.add_term({creation, annihilation}, coefficient);
  return p;
}

LadderPolynomial LadderPolynomial::annihilation() { return monomial(0, 1); }
LadderPolynomial LadderPolynomial::creation() { return monomial(1, 0); }
LadderPolynomial LadderPolynomial::number() { return monomial(1, 1); }

LadderPolynomial LadderPolynomial::position() {
  const double s = 1.0 / std::numbers::sqrt2;
  return monomial(1, 0, s) + monomial(0, 1, s);
}

LadderPolynomial LadderPolynomial::momentum() {
  const Complex s{0.0, 1.0 / std::numbers::sqrt2};
  return monomial(1, 0, s) + monomial(0, 1, -s);
}

Complex LadderPolynomial::coefficient(int creation, int annihilation) const {
  auto it = terms_.find({creation, annihilation});
  return it == terms_.end() ? Complex{} : it->second;
}

bool LadderPolynomial::is_scalar() const {
  return terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0};
}

std::optional<Complex> LadderPolynomial::scalar_value() const {
  if (is_zero()) return Complex{};
  if (is_scalar()) return terms_.begin()->second;
  return std::nullopt;
}

int LadderPolynomial::degree() const {
  int d = -1;
  for (const auto& [key, _] : terms_) d = std::max(d, key.degree());
  return d;
}

void LadderPolynomial::add_term(Monomial key, Complex value) {
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted) it->second += value;
  if (chops_to_zero(it->second)) terms_.erase(it);
}

void LadderPolynomial::accumulate(const LadderPolynomial& other, double sign) {
  for (const auto& [key, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(key, sign * c);
    if (inserted) {
      if (chops_to_zero(it->second)) terms_.erase(it);
      continue;
    }
    const double magnitude = std::abs(it->second) + std::abs(c);
    it->second += sign * c;
    if (cancels_to_zero(it->second, magnitude)) terms_.erase(it);
  }
}

LadderPolynomial& LadderPolynomial::operator+=(const LadderPolynomial& other) {
  accumulate(other, 1.0);
  return *this;
}

LadderPolynomial& LadderPolynomial::operator-=(const LadderPolynomial& other) {
  accumulate(other, -1.0);
  return *this;
}

LadderPolynomial& LadderPolynomial::operator*=(Complex factor) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= factor;
    if (chops_to_zero(it->second)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

LadderPolynomial operator*(const LadderPolynomial& a, const LadderPolynomial& b) {
  return normal_order_product(a, b);
}

std::string LadderPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest degree first reads more naturally.
  std::vector<std::pair<Monomial, Complex>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    return l.first.degree() > r.first.degree();
  });
  for (const auto& [key, c] : ordered) {
    if (!out.empty()) out += " + ";
    out += format_coefficient(c);
    if (key.creation == 1) out += "*ad";
    if (key.creation > 1) out += fmt::format("*ad^{}", key.creation);
    if (key.annihilation == 1) out += "*a";
    if (key.annihilation > 1) out += fmt::format("*a^{}", key.annihilation);
  }
  return out;
}

LadderPolynomial adjoint(const LadderPolynomial& p) {
  LadderPolynomial out;
  for (const auto& [key, c] : p.terms()) {
    out.add_term({key.annihilation, key.creation}, std::conj(c));
  }
  return out;
}

LadderPolynomial normal_order_product(const LadderPolynomial& a, const LadderPolynomial& b,
                                      int max_degree) {
  // Sum and total magnitude per key; canonicalized once at the end.
  std::map<Monomial, std::pair<Complex, double>> acc;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.degree() + kb.degree() > max_degree) {
        throw DegreeLimitError(fmt::format("product degree {} exceeds limit {}",
                                           ka.degree() + kb.degree(), max_degree));
      }
      // a†^m a^n a†^p a^q, contract the middle pair.
      const int n = ka.annihilation;
      const int p = kb.creation;
      const Complex c = ca * cb;
      for (int k = 0; k <= std::min(n, p); ++k) {
        const Complex term = c * contraction_weight(n, p, k);
        auto& [sum, magnitude] = acc[{ka.creation + p - k, n + kb.annihilation - k}];
        sum += term;
        magnitude += std::abs(term);
      }
    }
  }
  LadderPolynomial out;
  for (const auto& [key, entry] : acc) {
    if (!cancels_to_zero(entry.first, entry.second)) out.add_term(key, entry.first);
  }
  return out;
}

LadderPolynomial commutator(const LadderPolynomial& a, const LadderPolynomial& b, int max_degree) {
  return normal_order_product(a, b, max_degree) - normal_order_product(b, a, max_degree);
}

LadderPolynomial adjoint_power(const LadderPolynomial& g, const LadderPolynomial& h, int n,
                               int max_degree) {
  if (n < 0) throw ValidationError("adjoint power must be non-negative");
  LadderPolynomial out = h;
  for (int i = 0; i < n && !out.is_zero(); ++i) out = commutator(g, out, max_degree);
  return out;
}

LadderPolynomial power(const LadderPolynomial& p, int k, int max_degree) {
  if (k < 0) throw ValidationError("polynomial power must be non-negative");
  LadderPolynomial out = LadderPolynomial::identity();
  for (int i = 0; i < k; ++i) out = normal_order_product(out, p, max_degree);
  return out;
}

bool is_hermitian(const LadderPolynomial& p, double tolerance) {
  for (const auto& [key, c] : p.terms()) {
    if (std::abs(c - std::conj(p.coefficient(key.annihilation, key.creation))) > tolerance) {
      return false;
    }
  }
  return true;
}

double max_abs_difference(const LadderPolynomial& a, const LadderPolynomial& b) {
  double worst = 0.0;
  for (const auto& [key, c] : a.terms()) {
    worst = std::max(worst, std::abs(c - b.coefficient(key.creation, key.annihilation)));
  }
  for (const auto& [key, c] : b.terms()) {
    if (a.terms().count(key) == 0) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

double max_abs_coefficient(const LadderPolynomial& p) {
  double worst = 0.0;
  for (const auto& [_, c] : p.terms()) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace ncmetro
