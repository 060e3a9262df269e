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
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "ncmetro/cli_io.hpp"
#include "ncmetro/errors.hpp"
#include "ncmetro/experiments.hpp"
#include "ncmetro/fock.hpp"
#include "ncmetro/gaussian.hpp"
#include "ncmetro/generator.hpp"
#include "ncmetro/nilpotency.hpp"

namespace ncmetro {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ResultEnvelope start(const RunConfig& cfg) {
  ResultEnvelope e;
  e.command = std::string(command_name(cfg.command));
  e.config = cfg.echo;
  return e;
}

void put_scan(ResultEnvelope& e, const ScanResult& scan) {
  e.columns = {scan.key_column};
  e.columns.insert(e.columns.end(), scan.columns.begin(), scan.columns.end());
  for (const auto& row : scan.rows) {
    std::vector<double> r{static_cast<double>(row.key)};
    r.insert(r.end(), row.values.begin(), row.values.end());
    e.rows.push_back(std::move(r));
  }
  e.labels.insert(e.labels.end(), scan.metadata.begin(), scan.metadata.end());
}

void put_fit(ResultEnvelope& e, const FitResult& fit, const std::string& prefix = "") {
  e.scalars.emplace_back(prefix + "slope", fit.slope);
  e.scalars.emplace_back(prefix + "intercept", fit.intercept);
  e.scalars.emplace_back(prefix + "r_squared", fit.r_squared);
  e.scalars.emplace_back(prefix + "window_min", fit.window_min);
  e.scalars.emplace_back(prefix + "window_max", fit.window_max);
}

EncodingProtocol protocol_for(const RunConfig& cfg, int n) {
  EncodingProtocol p;
  p.h_g = cfg.h_g;
  p.h_lambda = cfg.h_lambda;
  p.n = n;
  p.lambda_bar = cfg.lambda_bar;
  p.g_bar = cfg.g_bar.value_or(0.0);
  p.probe = cfg.probe;
  p.validate();
  return p;
}

ResultEnvelope run_classify(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  const NilpotencyReport report = classify_pair(cfg.h_g, cfg.h_lambda);
  double p = kNaN;
  std::string kind;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Finite>) kind = "finite";
        if constexpr (std::is_same_v<T, FiniteConstant>) kind = "finite-constant";
        if constexpr (std::is_same_v<T, ClosedInfinite>) {
          kind = "closed-infinite";
          p = c.p;
        }
        if constexpr (std::is_same_v<T, CapReached>) kind = "cap-reached";
      },
      report.classification);
  e.scalars.emplace_back("index", report.index() >= 0 ? report.index() : kNaN);
  e.scalars.emplace_back("closure_p", p);
  e.labels.emplace_back("kind", kind);
  e.labels.emplace_back("classification", report.describe());
  for (std::size_t n = 0; n < report.tower.size(); ++n) {
    e.labels.emplace_back(fmt::format("tower_{}", n), report.tower[n].to_string());
  }
  if (std::holds_alternative<CapReached>(report.classification)) {
    e.trusted = false;
    e.trust_notes.push_back("adjoint tower neither terminated nor closed within the cap");
  }
  return e;
}

ResultEnvelope run_generator(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  const NilpotencyReport report = classify_pair(cfg.h_g, cfg.h_lambda);
  e.labels.emplace_back("classification", report.describe());
  for (int n : cfg.n_list) {
    const GeneratorResult gen = local_generator(protocol_for(cfg, n), report);
    e.labels.emplace_back(fmt::format("generator_N{}", n), gen.generator.to_string());
    e.scalars.emplace_back(fmt::format("terms_used_N{}", n), gen.truncation_used);
  }
  return e;
}

bool gaussian_capable(const RunConfig& cfg, const LadderPolynomial& generator) {
  return !std::holds_alternative<FockProbe>(cfg.probe) && generator.degree() <= 1;
}

ResultEnvelope run_qfi(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  e.columns = {"N", "qfi", "rmse"};
  std::string engine_used;
  for (int n : cfg.n_list) {
    const EncodingProtocol proto = protocol_for(cfg, n);
    double qfi = kNaN;
    std::optional<LadderPolynomial> generator;
    if (cfg.engine != QfiEngine::Fock) {
      try {
        generator = local_generator(proto).generator;
      } catch (const UnclassifiedPairError&) {
        if (cfg.engine == QfiEngine::Gaussian) throw;
      }
    }
    if (cfg.engine == QfiEngine::Gaussian && !gaussian_capable(cfg, *generator)) {
      throw NotGaussianError("Gaussian engine needs a linear local generator and a Gaussian probe");
    }
    if (cfg.engine != QfiEngine::Fock && generator && gaussian_capable(cfg, *generator)) {
      qfi = qfi_linear_generator(gaussian_probe(cfg.probe), *generator);
      engine_used = engine_used.empty() || engine_used == "gaussian" ? "gaussian" : "mixed";
    } else {
      const NumericQfi q = qfi_numeric_converged(proto, cfg.dim, cfg.step);
      if (!q.passes_agree) {
        e.trusted = false;
        e.trust_notes.push_back(
            fmt::format("N={}: finite-difference passes differ by {:.3e}", n, q.pass_gap));
      }
      qfi = q.value;
      engine_used = engine_used.empty() || engine_used == "fock" ? "fock" : "mixed";
    }
    e.rows.push_back({static_cast<double>(n), qfi, qfi > 0.0 ? qcrb_rmse(qfi, cfg.nu) : kNaN});
  }
  e.labels.emplace_back("engine", engine_used);
  return e;
}

ResultEnvelope run_fig2a(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  const ScanResult scan = fig2a_scan(cfg.k_list, cfg.n_list);
  put_scan(e, scan);
  if (scan.rows.size() >= 3) {
    for (const auto& name : scan.columns) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : scan.rows) {
        pts.emplace_back(std::log10(static_cast<double>(row.key)), row.values[scan.column(name)]);
      }
      e.scalars.emplace_back("slope_" + name.substr(std::string("logcoef_").size()),
                             fit_line(pts).slope);
    }
  }
  return e;
}

ResultEnvelope run_fig3(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  Fig3Options o;
  o.xi_bar = *cfg.xi_bar;
  o.alpha = cfg.alpha;
  o.theta = cfg.theta;
  o.fock_dim = cfg.dim;
  o.step = cfg.step;
  const ScanResult scan = fig3_scan(cfg.n_list, o);
  put_scan(e, scan);
  const std::size_t col = scan.column("fock_trusted");
  for (const auto& row : scan.rows) {
    if (row.key <= o.fock_max_n && row.values[col] == 0.0) {
      e.trust_notes.push_back(fmt::format("N={}: Fock oracle did not converge", row.key));
    }
  }
  return e;
}

ResultEnvelope run_example1(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  const ScalingStudy study = cfg.preset == "xp-constant"
                                 ? constant_commutator_scaling(cfg.n_list, *cfg.g_bar, cfg.probe)
                                 : example1_scaling(cfg.n_list, *cfg.s_bar, cfg.probe);
  put_scan(e, study.scan);
  put_fit(e, study.fit);
  e.scalars.emplace_back("rmse_slope", -study.fit.slope / 2.0);
  return e;
}

ResultEnvelope run_switch(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  SwitchOptions o;
  o.dim = cfg.dim;
  o.order = cfg.order;
  o.step = cfg.step;
  const ScalingStudy study = switch_scaling(cfg.n_list, cfg.x, cfg.p, o);
  put_scan(e, study.scan);
  put_fit(e, study.fit);
  double worst = 0.0;
  for (const auto& row : study.scan.rows) {
    const double d = std::remainder(row.values[2] - row.values[3], 2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(d));
  }
  e.scalars.emplace_back("max_phase_error", worst);
  return e;
}

ResultEnvelope run_dvbound(const RunConfig& cfg) {
  ResultEnvelope e = start(cfg);
  const ScanResult scan = dv_bound_scan(cfg.system, cfg.n_list, *cfg.g_bar);
  put_scan(e, scan);
  double worst = 0.0;
  for (const auto& row : scan.rows) worst = std::max(worst, row.values[0] / row.values[1]);
  e.scalars.emplace_back("max_qfi_over_bound", worst);
  return e;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ResultEnvelope execute(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Classify:
      return run_classify(cfg);
    case Command::Generator:
      return run_generator(cfg);
    case Command::Qfi:
      return run_qfi(cfg);
    case Command::Fig2a:
      return run_fig2a(cfg);
    case Command::Fig2b: {
      ResultEnvelope e = start(cfg);
      put_scan(e, fig2b_scan(cfg.n_list, cfg.k_max));
      return e;
    }
    case Command::Fig3:
      return run_fig3(cfg);
    case Command::Example1:
      return run_example1(cfg);
    case Command::Switch:
      return run_switch(cfg);
    case Command::DvBound:
      return run_dvbound(cfg);
  }
  throw ValidationError("unhandled command");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (std::find(args.begin(), args.end(), "--help") != args.end()) {
    out << usage_text();
    return kExitOk;
  }
  try {
    const RunConfig cfg = parse_config(args);
    const auto t0 = std::chrono::steady_clock::now();
    ResultEnvelope envelope = execute(cfg);
    envelope.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    envelope.timestamp = utc_timestamp();
    emit(envelope, cfg, out);
    if (!envelope.trusted) {
      for (const auto& note : envelope.trust_notes) err << "untrusted: " << note << "\n";
      return kExitTrust;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const TrustError& e) {
    err << "numerical trust failure: " << e.what() << "\n";
    return kExitTrust;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ncmetro
