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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ncmetro/errors.hpp"
#include "ncmetro/experiments.hpp"

namespace ncmetro {

namespace {

enum class Axes { Linear, SemiLog, LogLog };

FitResult ordinary_least_squares(std::span<const std::pair<double, double>> points,
                                 std::optional<FitWindow> window, Axes axes) {
  const bool log_x = axes == Axes::LogLog;
  const bool log_y = axes != Axes::Linear;
  if (window && !(window->min < window->max)) throw ValidationError("degenerate fit window");
  std::vector<std::pair<double, double>> used;
  for (const auto& [x, y] : points) {
    if (window && (x < window->min || x > window->max)) continue;
    if ((log_y && !(y > 0.0)) || (log_x && !(x > 0.0))) {
      throw DomainError("log fit needs positive values");
    }
    if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("fit needs finite values");
    used.emplace_back(log_x ? std::log(x) : x, log_y ? std::log(y) : y);
  }
  if (used.size() < 3) throw ValidationError("fit needs at least 3 points in the window");

  const auto n = static_cast<Eigen::Index>(used.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = used[i].first;
    design(i, 1) = 1.0;
    rhs(i) = used[i].second;
  }
  if (design.col(0).maxCoeff() == design.col(0).minCoeff()) {
    throw ValidationError("degenerate fit window");
  }
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd residual = rhs - design * beta;
  const double ss_tot = (rhs.array() - rhs.mean()).square().sum();
  const double ss_res = residual.squaredNorm();

  FitResult out;
  out.slope = beta(0);
  out.intercept = beta(1);
  out.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  const auto [lo, hi] = std::minmax_element(used.begin(), used.end());
  out.window_min = log_x ? std::exp(lo->first) : lo->first;
  out.window_max = log_x ? std::exp(hi->first) : hi->first;
  out.points = static_cast<int>(n);
  return out;
}

}  // namespace

FitResult fit_loglog_slope(std::span<const std::pair<double, double>> points,
                           std::optional<FitWindow> window) {
  return ordinary_least_squares(points, window, Axes::LogLog);
}

FitResult fit_semilog_slope(std::span<const std::pair<double, double>> points,
                            std::optional<FitWindow> window) {
  return ordinary_least_squares(points, window, Axes::SemiLog);
}

FitResult fit_line(std::span<const std::pair<double, double>> points,
                   std::optional<FitWindow> window) {
  return ordinary_least_squares(points, window, Axes::Linear);
}

std::vector<std::pair<double, double>> zip(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("zip needs equal lengths");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], y[i]);
  return out;
}

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

}  // namespace ncmetro
