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

#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <string>

namespace ncmetro {

using Complex = std::complex<double>;

/// Coefficients with magnitude at or below this are dropped after every
/// canonicalization, so the zero test is structural.
inline constexpr double kChopTolerance = 1e-12;

/// A coefficient produced by adding terms is also dropped when it is at or
/// below this fraction of the summed magnitudes of those terms.
inline constexpr double kCancellationTolerance = 1e-12;

/// Default bound on m + n for any monomial produced by a product.
inline constexpr int kDefaultMaxDegree = 64;

/// The normal-ordered monomial (a†)^creation a^annihilation.
struct Monomial {
  int creation = 0;
  int annihilation = 0;

  int degree() const { return creation + annihilation; }
  auto operator<=>(const Monomial&) const = default;
};

/// A polynomial in one bosonic mode's ladder operators, held in canonical
/// normal-ordered form: each (m, n) appears at most once and zero
/// coefficients are absent.
class LadderPolynomial {
 public:
  using Terms = std::map<Monomial, Complex>;

  LadderPolynomial() = default;

  static LadderPolynomial scalar(Complex value);
  static LadderPolynomial identity() { return scalar(1.0); }
  static LadderPolynomial monomial(int creation, int annihilation,
                                   Complex coefficient = 1.0);
  /// â
  static LadderPolynomial annihilation();
  /// â†
  static LadderPolynomial creation();
  /// X̂ = (â† + â)/√2
  static LadderPolynomial position();
  /// P̂ = i(â† − â)/√2
  static LadderPolynomial momentum();
  /// â†â
  static LadderPolynomial number();

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Complex coefficient(int creation, int annihilation) const;

  bool is_zero() const { return terms_.empty(); }
  /// True when the only term is the identity (0, 0).
  bool is_scalar() const;
  /// The identity coefficient when `is_scalar()`; the zero polynomial
  /// reports 0.
  std::optional<Complex> scalar_value() const;
  /// Max m + n over terms; -1 for the zero polynomial.
  int degree() const;

  /// Accumulates `value` onto (m, n), dropping the entry if it chops to zero.
  void add_term(Monomial key, Complex value);

  LadderPolynomial& operator+=(const LadderPolynomial& other);
  LadderPolynomial& operator-=(const LadderPolynomial& other);
  LadderPolynomial& operator*=(Complex factor);

  friend LadderPolynomial operator+(LadderPolynomial a, const LadderPolynomial& b) { return a += b; }
  friend LadderPolynomial operator-(LadderPolynomial a, const LadderPolynomial& b) { return a -= b; }
  friend LadderPolynomial operator*(LadderPolynomial a, Complex s) { return a *= s; }
  friend LadderPolynomial operator*(Complex s, LadderPolynomial a) { return a *= s; }
  friend LadderPolynomial operator-(LadderPolynomial a) { return a *= -1.0; }
  /// Normal-ordered product with the default degree limit.
  friend LadderPolynomial operator*(const LadderPolynomial& a, const LadderPolynomial& b);

  /// Structural equality on canonical forms (bitwise coefficients).
  friend bool operator==(const LadderPolynomial&, const LadderPolynomial&) = default;

  /// Human-readable form, e.g. `0.5*ad^2 + 1*ad*a + 0.5`.
  std::string to_string() const;

 private:
  void accumulate(const LadderPolynomial& other, double sign);

  Terms terms_;
};

/// Hermitian adjoint: (a†^m a^n)† = a†^n a^m with conjugated coefficient.
LadderPolynomial adjoint(const LadderPolynomial& p);

/// Canonical form of a·b using a^n a†^p = Σ_k C(n,k) C(p,k) k! a†^(p−k) a^(n−k).
/// Throws DegreeLimitError when any product monomial exceeds `max_degree`.
LadderPolynomial normal_order_product(const LadderPolynomial& a, const LadderPolynomial& b,
                                      int max_degree = kDefaultMaxDegree);

/// [a, b] = ab − ba.
LadderPolynomial commutator(const LadderPolynomial& a, const LadderPolynomial& b,
                            int max_degree = kDefaultMaxDegree);

/// (ad_g)^n(h); n = 0 returns h.
LadderPolynomial adjoint_power(const LadderPolynomial& g, const LadderPolynomial& h, int n,
                               int max_degree = kDefaultMaxDegree);

/// p^k by repeated normal-ordered multiplication.
LadderPolynomial power(const LadderPolynomial& p, int k, int max_degree = kDefaultMaxDegree);

/// coefficient(m,n) == conj(coefficient(n,m)) for every term, within `tolerance`.
bool is_hermitian(const LadderPolynomial& p, double tolerance = kChopTolerance);

/// Largest coefficient-wise |a − b|; 0 for identical polynomials.
double max_abs_difference(const LadderPolynomial& a, const LadderPolynomial& b);

/// Largest |coefficient|; 0 for the zero polynomial.
double max_abs_coefficient(const LadderPolynomial& p);

}  // namespace ncmetro
