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

#include "ncmetro/nilpotency.hpp"

#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// If third = −p·first for a single positive real p, returns p.
std::optional<double> closure_constant(const LadderPolynomial& first,
                                       const LadderPolynomial& third) {
  if (first.is_zero() || first.size() != third.size()) return std::nullopt;
  std::optional<Complex> ratio;
  for (const auto& [key, c] : first.terms()) {
    const Complex t = third.coefficient(key.creation, key.annihilation);
    if (t == Complex{}) return std::nullopt;
    const Complex r = -t / c;
    if (!ratio) {
      ratio = r;
    } else if (std::abs(r - *ratio) > kClosureTolerance * std::max(1.0, std::abs(*ratio))) {
      return std::nullopt;
    }
  }
  if (std::abs(ratio->imag()) > kClosureTolerance || ratio->real() <= kClosureTolerance) {
    return std::nullopt;
  }
  return ratio->real();
}

}  // namespace

int NilpotencyReport::index() const {
  return std::visit(overloaded{[](const Finite& f) { return f.index; },
                               [](const FiniteConstant& f) { return f.index; },
                               [](const auto&) { return -1; }},
                    classification);
}

std::string NilpotencyReport::describe() const {
  return std::visit(
      overloaded{
          [](const Finite& f) { return fmt::format("Finite(K={})", f.index); },
          [](const FiniteConstant& f) {
            return fmt::format("FiniteConstant(K={}, value={:.12g}{:+.12g}i)", f.index,
                               f.value.real(), f.value.imag());
          },
          [](const ClosedInfinite& c) { return fmt::format("ClosedInfinite(p={:.12g})", c.p); },
          [](const CapReached& c) { return fmt::format("CapReached(cap={})", c.cap); }},
      classification);
}

NilpotencyReport classify_pair(const LadderPolynomial& g, const LadderPolynomial& h, int cap,
                               int max_degree) {
  if (g.is_zero() || h.is_zero()) throw ValidationError("classify_pair needs nonzero operators");
  if (cap < 2) throw ValidationError("adjoint cap must be at least 2");

  NilpotencyReport report;
  report.tower.push_back(h);

  auto try_closure = [&](const LadderPolynomial& third) -> bool {
    if (auto p = closure_constant(report.tower[1], third)) {
      report.tower.resize(3);
      report.classification = ClosedInfinite{*p};
      return true;
    }
    return false;
  };

  for (int n = 1; n <= cap; ++n) {
    LadderPolynomial next = commutator(g, report.tower.back(), max_degree);
    if (next.is_zero()) {
      const LadderPolynomial& last = report.tower.back();
      const int k = n - 1;
      if (last.is_scalar()) {
        report.classification = FiniteConstant{k, *last.scalar_value()};
      } else {
        report.classification = Finite{k};
      }
      return report;
    }
    if (n == 3 && try_closure(next)) return report;
    report.tower.push_back(std::move(next));
  }

  if (cap < 3) {
    // The closure test needs (ad_g)^3(h) even when the cap stops short of it.
    LadderPolynomial third = commutator(g, report.tower.back(), max_degree);
    if (third.is_zero()) {
      const LadderPolynomial& last = report.tower.back();
      if (last.is_scalar()) {
        report.classification = FiniteConstant{2, *last.scalar_value()};
      } else {
        report.classification = Finite{2};
      }
      return report;
    }
    if (try_closure(third)) return report;
  }
  report.classification = CapReached{cap};
  return report;
}

}  // namespace ncmetro
