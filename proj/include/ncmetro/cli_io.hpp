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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncmetro/experiments.hpp"
#include "ncmetro/ladder_polynomial.hpp"
#include "ncmetro/protocol.hpp"
#include "ncmetro/switch.hpp"

namespace ncmetro {

enum class Command { Classify, Generator, Qfi, Fig2a, Fig2b, Fig3, Example1, Switch, DvBound };
enum class OutputFormat { Csv, Json };
enum class QfiEngine { Auto, Gaussian, Fock };

std::string_view command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitTrust = 3;

/// Fully validated invocation. Fields irrelevant to `command` keep their
/// defaults.
struct RunConfig {
  Command command = Command::Classify;

  std::string preset;  ///< empty when the pair is given inline
  std::string g_expr;
  std::string h_expr;
  LadderPolynomial h_g;
  LadderPolynomial h_lambda;

  std::vector<int> n_list;
  std::vector<int> k_list;
  int k_max = 0;
  double lambda_bar = 0.0;
  std::optional<double> g_bar;
  std::optional<double> s_bar;
  std::optional<double> xi_bar;
  double theta = 0.0;
  std::string theta_text;
  Complex alpha{0.3, 0.0};
  std::string probe_text = "vacuum";
  ProbeDescriptor probe = VacuumProbe{};
  int dim = 80;
  double step = 1e-4;
  int nu = 1;
  double x = 0.1;
  double p = 0.2;
  CausalOrder order = CausalOrder::Superposed;
  std::string system = "qubit";
  QfiEngine engine = QfiEngine::Auto;

  std::string out_path;  ///< empty: stdout
  OutputFormat format = OutputFormat::Csv;

  /// Normalized key/value echo of every effective setting, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Parses `args` (without the program name). The first positional is the
/// command. `--config <file>` reads `key = value` lines whose keys are the
/// long flag names; flags on the command line override the file. Throws
/// ValidationError (or ParseError for operator expressions).
RunConfig parse_config(const std::vector<std::string>& args);

std::string usage_text();

/// Same, reading every setting from `key = value` text; `command` is a key.
RunConfig parse_config_text(std::string_view text);

/// Built-in (h_g, h_λ) pairs: shear-k1 (X^2, P), xp-constant (X, P),
/// squeeze-inf (ad^2 + a^2, P).
std::pair<LadderPolynomial, LadderPolynomial> preset_pair(std::string_view name);

/// Angle literal: a real number, or `[k*]pi[/m]` with optional sign,
/// e.g. `pi/4`, `-pi`, `3pi/8`, `0.5*pi`.
double parse_angle(std::string_view text);

/// `a..b`, `a,b,c` or a single integer.
std::vector<int> parse_int_list(std::string_view text);

/// `re`, `re+imi`, `imi`, `re-imi`.
Complex parse_complex(std::string_view text);

/// `vacuum`, `coherent` (amplitude from --alpha) or `coherent:<complex>`,
/// `squeezed:<r>[,<phi>]`.
ProbeDescriptor parse_probe(std::string_view text, Complex default_alpha);

struct ResultEnvelope {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  /// Tabular payload; the first column is the scan variable.
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Single-value payload.
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, std::string>> labels;
  bool trusted = true;
  std::vector<std::string> trust_notes;
  double duration_seconds = 0.0;
  std::string timestamp;  ///< JSON only

  /// Field-wise equality with NaN == NaN.
  bool operator==(const ResultEnvelope& other) const;
};

/// Tabular envelopes: header row then one line per row, numbers at 17
/// significant digits. Envelopes without columns: `name,value` lines from
/// scalars then labels. Deterministic; carries no duration or timestamp.
std::string to_csv(const ResultEnvelope& envelope);

std::string to_json(const ResultEnvelope& envelope);

/// Inverse of to_json; NaN is stored as null. Throws ValidationError on
/// malformed input or a schema_version mismatch.
ResultEnvelope envelope_from_json(std::string_view text);

/// Writes to `config.out_path` (or `out` when empty) in the configured format.
/// Filesystem failures throw Error naming the path.
void emit(const ResultEnvelope& envelope, const RunConfig& config, std::ostream& out);

/// Runs the configured computation. Throws ValidationError / TrustError
/// subclasses unchanged.
ResultEnvelope execute(const RunConfig& config);

/// Full CLI: parse, execute, emit. Returns 0, 2 (validation) or 3 (trust);
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncmetro
