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

inline constexpr int kDefaultAdjointCap = 32;

/// Tolerance used to accept a closure ratio as a positive real constant.
inline constexpr double kClosureTolerance = 1e-10;

/// (ad_g)^K(h) ≠ 0 and (ad_g)^(K+1)(h) = 0, with a non-scalar K-th entry.
struct Finite {
  int index = 0;
};

/// As Finite, but the K-th nested commutator is a nonzero multiple of the
/// identity, so its variance vanishes on every state.
struct FiniteConstant {
  int index = 0;
  Complex value;
};

/// The tower never terminates: with C = [g,h], (ad_g)²(C) = −p·C for a
/// positive real p.
struct ClosedInfinite {
  double p = 0.0;
};

/// Neither termination nor closure was found within `cap` commutators.
struct CapReached {
  int cap = 0;
};

using NilpotencyClass = std::variant<Finite, FiniteConstant, ClosedInfinite, CapReached>;

struct NilpotencyReport {
  NilpotencyClass classification;
  /// tower[n] = (ad_g)^n(h). Holds entries 0..K for the finite kinds,
  /// 0..2 (h, C, D) for ClosedInfinite and 0..cap for CapReached.
  std::vector<LadderPolynomial> tower;

  bool is_finite() const {
    return std::holds_alternative<Finite>(classification) ||
           std::holds_alternative<FiniteConstant>(classification);
  }
  /// K for the finite kinds; -1 otherwise.
  int index() const;
  std::string describe() const;
};

/// Walks the adjoint tower of (g, h). Returns at the first vanishing entry;
/// as soon as (ad_g)³(h) is available checks the closure relation against
/// C = (ad_g)(h); otherwise stops at `cap`.
NilpotencyReport classify_pair(const LadderPolynomial& g, const LadderPolynomial& h,
                               int cap = kDefaultAdjointCap, int max_degree = kDefaultMaxDegree);

}  // namespace ncmetro
