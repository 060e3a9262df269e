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
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ncmetro/cli_io.hpp"
#include "ncmetro/errors.hpp"
#include "ncmetro/fock.hpp"
#include "ncmetro/operator_parser.hpp"

namespace ncmetro {

namespace {

constexpr int kMaxListLength = 4096;

const std::map<std::string_view, Command, std::less<>>& command_table() {
  static const std::map<std::string_view, Command, std::less<>> table{
      {"classify", Command::Classify}, {"generator", Command::Generator}, {"qfi", Command::Qfi},
      {"fig2a", Command::Fig2a},       {"fig2b", Command::Fig2b},         {"fig3", Command::Fig3},
      {"example1", Command::Example1}, {"switch", Command::Switch},       {"dvbound", Command::DvBound}};
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw ValidationError(fmt::format("{} expects a finite number, got '{}'", what, s));
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError(fmt::format("{} expects an integer, got '{}'", what, s));
  }
  return v;
}

std::string real_text(double v) { return fmt::format("{:.17g}", v); }

std::string list_text(const std::vector<int>& v) { return fmt::format("{}", fmt::join(v, ",")); }

// Raw flag values before validation; empty optional means "not given".
struct RawOptions {
  std::string command;
  std::optional<std::string> g, h, preset, n, k, kmax, lambda, gbar, s, xi, theta, alpha, probe,
      dim, step, nu, x, p, order, system, engine, out, format;
};

std::unique_ptr<CLI::App> build_app(RawOptions& raw, bool with_config_flag) {
  auto app = std::make_unique<CLI::App>("Noncommutative quantum metrology toolkit", "ncmetro");
  app->set_help_flag("--help", "Print this help message and exit");
  app->allow_config_extras(CLI::config_extras_mode::error);
  app->add_option("command", raw.command,
                  "classify | generator | qfi | fig2a | fig2b | fig3 | example1 | switch | dvbound");
  const std::vector<std::tuple<const char*, std::optional<std::string>*, const char*>> flags{
      {"--g", &raw.g, "auxiliary generator expression"},
      {"--h", &raw.h, "parameter generator expression"},
      {"--preset", &raw.preset, "shear-k1 | xp-constant | squeeze-inf"},
      {"--N", &raw.n, "repetition counts: a..b, a,b,c or a single value"},
      {"--K", &raw.k, "nilpotency indices for fig2a"},
      {"--kmax", &raw.kmax, "largest K for fig2b"},
      {"--lambda", &raw.lambda, "working point of the estimated parameter"},
      {"--gbar", &raw.gbar, "auxiliary coupling"},
      {"--s", &raw.s, "shearing strength (sets gbar)"},
      {"--xi", &raw.xi, "squeezing strength (gbar = xi/2)"},
      {"--theta", &raw.theta, "homodyne angle, e.g. pi/4"},
      {"--alpha", &raw.alpha, "coherent amplitude, e.g. 0.3 or 0.3+0.1i"},
      {"--probe", &raw.probe, "vacuum | coherent[:alpha] | squeezed:r[,phi]"},
      {"--dim", &raw.dim, "Fock truncation"},
      {"--step", &raw.step, "finite-difference step"},
      {"--nu", &raw.nu, "number of repetitions in the Cramer-Rao bound"},
      {"--x", &raw.x, "SWITCH position displacement"},
      {"--p", &raw.p, "SWITCH momentum displacement"},
      {"--order", &raw.order, "superposed | definite"},
      {"--system", &raw.system, "qubit | qutrit"},
      {"--engine", &raw.engine, "auto | gaussian | fock"},
      {"--out", &raw.out, "output path (default stdout)"},
      {"--format", &raw.format, "csv | json"}};
  for (const auto& [name, target, help] : flags) app->add_option(name, *target, help);
  if (with_config_flag) {
    app->set_config("--config", "", "key = value file mirroring the long flags");
  }
  return app;
}

void require_pair(const RawOptions& raw, RunConfig& cfg, std::string_view default_preset) {
  if (raw.preset && (raw.g || raw.h)) {
    throw ValidationError("give either --preset or --g/--h, not both");
  }
  if (raw.g || raw.h) {
    if (!raw.g || !raw.h) throw ValidationError("inline pairs need both --g and --h");
    cfg.g_expr = *raw.g;
    cfg.h_expr = *raw.h;
    cfg.h_g = parse_operator(cfg.g_expr);
    cfg.h_lambda = parse_operator(cfg.h_expr);
    return;
  }
  const std::string name = raw.preset ? *raw.preset : std::string(default_preset);
  if (name.empty()) throw ValidationError("this command needs --preset or --g and --h");
  std::tie(cfg.h_g, cfg.h_lambda) = preset_pair(name);
  cfg.preset = name;
  cfg.g_expr = cfg.h_g.to_string();
  cfg.h_expr = cfg.h_lambda.to_string();
}

void require_hermitian_pair(const RunConfig& cfg) {
  if (!is_hermitian(cfg.h_g, 1e-10) || !is_hermitian(cfg.h_lambda, 1e-10)) {
    throw ValidationError("generators must be Hermitian");
  }
  if (cfg.h_g.is_zero() || cfg.h_lambda.is_zero()) throw ValidationError("generators must be nonzero");
}

std::vector<int> n_values(const RawOptions& raw, std::string_view fallback) {
  std::vector<int> v = parse_int_list(raw.n ? std::string_view(*raw.n) : fallback);
  if (std::any_of(v.begin(), v.end(), [](int n) { return n < 1; })) {
    throw ValidationError("--N values must be >= 1");
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double resolve_g_bar(const RawOptions& raw, double fallback) {
  const int given = (raw.gbar ? 1 : 0) + (raw.s ? 1 : 0) + (raw.xi ? 1 : 0);
  if (given > 1) throw ValidationError("--gbar, --s and --xi are mutually exclusive");
  if (raw.gbar) return parse_real(*raw.gbar, "--gbar");
  if (raw.s) return parse_real(*raw.s, "--s");
  if (raw.xi) return parse_real(*raw.xi, "--xi") / 2.0;
  return fallback;
}

int dim_value(const RawOptions& raw) {
  const int dim = raw.dim ? parse_int(*raw.dim, "--dim") : kDefaultFockDim;
  if (dim < 8 || dim > kMaxFockDim) {
    throw ValidationError(fmt::format("--dim must lie in [8, {}]", kMaxFockDim));
  }
  return dim;
}

double step_value(const RawOptions& raw) {
  const double step = raw.step ? parse_real(*raw.step, "--step") : kDefaultFiniteDifferenceStep;
  if (!(step > 0.0 && step <= 0.1)) throw ValidationError("--step must lie in (0, 0.1]");
  return step;
}

void set_probe(const RawOptions& raw, RunConfig& cfg, std::string_view fallback) {
  cfg.alpha = raw.alpha ? parse_complex(*raw.alpha) : Complex{0.3, 0.0};
  cfg.probe_text = raw.probe ? *raw.probe : std::string(fallback);
  cfg.probe = parse_probe(cfg.probe_text, cfg.alpha);
}

std::string probe_echo(const RunConfig& cfg) { return describe(cfg.probe); }

RunConfig finalize(const RawOptions& raw) {
  RunConfig cfg;
  const auto it = command_table().find(raw.command);
  if (raw.command.empty()) throw ValidationError("missing command");
  if (it == command_table().end()) throw ValidationError("unknown command '" + raw.command + "'");
  cfg.command = it->second;

  if (raw.format) {
    if (*raw.format == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (*raw.format == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ValidationError("--format must be csv or json");
    }
  }
  if (raw.out) cfg.out_path = *raw.out;

  auto& echo = cfg.echo;
  echo.emplace_back("command", raw.command);
  switch (cfg.command) {
    case Command::Classify:
      require_pair(raw, cfg, "");
      require_hermitian_pair(cfg);
      break;
    case Command::Generator:
    case Command::Qfi: {
      require_pair(raw, cfg, "");
      require_hermitian_pair(cfg);
      cfg.n_list = n_values(raw, "1");
      cfg.g_bar = resolve_g_bar(raw, 0.1);
      cfg.lambda_bar = raw.lambda ? parse_real(*raw.lambda, "--lambda") : 0.0;
      if (cfg.command == Command::Qfi) {
        set_probe(raw, cfg, "vacuum");
        cfg.dim = dim_value(raw);
        cfg.step = step_value(raw);
        cfg.nu = raw.nu ? parse_int(*raw.nu, "--nu") : 1;
        if (cfg.nu < 1) throw ValidationError("--nu must be >= 1");
        const std::string engine = raw.engine ? *raw.engine : "auto";
        if (engine == "auto") {
          cfg.engine = QfiEngine::Auto;
        } else if (engine == "gaussian") {
          cfg.engine = QfiEngine::Gaussian;
        } else if (engine == "fock") {
          cfg.engine = QfiEngine::Fock;
        } else {
          throw ValidationError("--engine must be auto, gaussian or fock");
        }
      }
      break;
    }
    case Command::Fig2a: {
      cfg.k_list = parse_int_list(raw.k ? std::string_view(*raw.k) : "1,4,6");
      if (std::any_of(cfg.k_list.begin(), cfg.k_list.end(), [](int k) { return k < 0; })) {
        throw ValidationError("--K values must be >= 0");
      }
      std::sort(cfg.k_list.begin(), cfg.k_list.end());
      cfg.k_list.erase(std::unique(cfg.k_list.begin(), cfg.k_list.end()), cfg.k_list.end());
      cfg.n_list = n_values(raw, "1..30");
      break;
    }
    case Command::Fig2b:
      cfg.n_list = n_values(raw, "6,10,16,20");
      cfg.k_max = raw.kmax ? parse_int(*raw.kmax, "--kmax") : 30;
      if (cfg.k_max < cfg.n_list.back() + 1) throw ValidationError("--kmax must be >= max(N) + 1");
      break;
    case Command::Fig3:
      cfg.n_list = n_values(raw, "1..12");
      cfg.xi_bar = raw.xi ? parse_real(*raw.xi, "--xi") : 0.1;
      if (!(*cfg.xi_bar > 0.0)) throw ValidationError("--xi must be > 0");
      cfg.alpha = raw.alpha ? parse_complex(*raw.alpha) : Complex{0.3, 0.0};
      cfg.theta_text = raw.theta ? *raw.theta : "pi/4";
      cfg.theta = parse_angle(cfg.theta_text);
      cfg.dim = dim_value(raw);
      cfg.step = step_value(raw);
      break;
    case Command::Example1: {
      const std::string name = raw.preset ? *raw.preset : "shear-k1";
      if (raw.g || raw.h) throw ValidationError("example1 takes --preset shear-k1 or xp-constant");
      if (name == "shear-k1") {
        if (raw.gbar || raw.xi) throw ValidationError("shear-k1 takes --s");
        cfg.s_bar = raw.s ? parse_real(*raw.s, "--s") : 0.2;
      } else if (name == "xp-constant") {
        if (raw.s || raw.xi) throw ValidationError("xp-constant takes --gbar");
        cfg.g_bar = raw.gbar ? parse_real(*raw.gbar, "--gbar") : 0.2;
      } else {
        throw ValidationError("example1 takes --preset shear-k1 or xp-constant");
      }
      std::tie(cfg.h_g, cfg.h_lambda) = preset_pair(name);
      cfg.preset = name;
      cfg.n_list = n_values(raw, "8..64");
      if (name == "shear-k1" && cfg.n_list.back() < 8 * cfg.n_list.front()) {
        throw ValidationError("example1 needs max N >= 8 min N");
      }
      if (cfg.n_list.size() < 3) throw ValidationError("example1 needs at least 3 values of N");
      set_probe(raw, cfg, "vacuum");
      break;
    }
    case Command::Switch: {
      cfg.n_list = n_values(raw, "1..6");
      if (cfg.n_list.size() < 3) throw ValidationError("switch needs at least 3 values of N");
      cfg.x = raw.x ? parse_real(*raw.x, "--x") : 0.1;
      cfg.p = raw.p ? parse_real(*raw.p, "--p") : 0.2;
      if (cfg.p == 0.0) throw ValidationError("switch needs p != 0");
      cfg.dim = dim_value(raw);
      cfg.step = step_value(raw);
      const std::string order = raw.order ? *raw.order : "superposed";
      if (order == "superposed") {
        cfg.order = CausalOrder::Superposed;
      } else if (order == "definite") {
        cfg.order = CausalOrder::Definite;
      } else {
        throw ValidationError("--order must be superposed or definite");
      }
      break;
    }
    case Command::DvBound:
      cfg.system = raw.system ? *raw.system : "qubit";
      if (cfg.system != "qubit" && cfg.system != "qutrit") {
        throw ValidationError("--system must be qubit or qutrit");
      }
      cfg.n_list = n_values(raw, "1..50");
      cfg.g_bar = raw.gbar ? parse_real(*raw.gbar, "--gbar") : 0.1;
      break;
  }

  // Echo in a fixed order, only fields the command consumed.
  const bool pair = cfg.command == Command::Classify || cfg.command == Command::Generator ||
                    cfg.command == Command::Qfi || cfg.command == Command::Example1;
  if (pair) {
    if (!cfg.preset.empty()) echo.emplace_back("preset", cfg.preset);
    echo.emplace_back("g", cfg.h_g.to_string());
    echo.emplace_back("h", cfg.h_lambda.to_string());
  }
  if (!cfg.n_list.empty()) echo.emplace_back("N", list_text(cfg.n_list));
  if (!cfg.k_list.empty()) echo.emplace_back("K", list_text(cfg.k_list));
  if (cfg.command == Command::Fig2b) echo.emplace_back("kmax", std::to_string(cfg.k_max));
  if (cfg.command == Command::Generator || cfg.command == Command::Qfi) {
    echo.emplace_back("lambda", real_text(cfg.lambda_bar));
  }
  if (cfg.g_bar) echo.emplace_back("gbar", real_text(*cfg.g_bar));
  if (cfg.s_bar) echo.emplace_back("s", real_text(*cfg.s_bar));
  if (cfg.xi_bar) echo.emplace_back("xi", real_text(*cfg.xi_bar));
  if (cfg.command == Command::Fig3) {
    echo.emplace_back("theta", real_text(cfg.theta));
    echo.emplace_back("alpha", fmt::format("{:.17g}{:+.17g}i", cfg.alpha.real(), cfg.alpha.imag()));
  }
  if (cfg.command == Command::Qfi || cfg.command == Command::Example1) {
    echo.emplace_back("probe", probe_echo(cfg));
  }
  if (cfg.command == Command::Switch) {
    echo.emplace_back("x", real_text(cfg.x));
    echo.emplace_back("p", real_text(cfg.p));
    echo.emplace_back("order", cfg.order == CausalOrder::Superposed ? "superposed" : "definite");
  }
  if (cfg.command == Command::Qfi || cfg.command == Command::Fig3 || cfg.command == Command::Switch) {
    echo.emplace_back("dim", std::to_string(cfg.dim));
    echo.emplace_back("step", real_text(cfg.step));
  }
  if (cfg.command == Command::Qfi) {
    echo.emplace_back("nu", std::to_string(cfg.nu));
    echo.emplace_back("engine", cfg.engine == QfiEngine::Auto       ? "auto"
                                : cfg.engine == QfiEngine::Gaussian ? "gaussian"
                                                                    : "fock");
  }
  if (cfg.command == Command::DvBound) echo.emplace_back("system", cfg.system);
  echo.emplace_back("format", cfg.format == OutputFormat::Csv ? "csv" : "json");
  return cfg;
}

template <typename Parse>
RunConfig parse_with(const RawOptions& raw, Parse&& parse) {
  try {
    parse();
  } catch (const CLI::Error& e) {
    throw ValidationError(e.what());
  }
  return finalize(raw);
}

}  // namespace

std::string usage_text() {
  RawOptions raw;
  return build_app(raw, true)->help();
}

std::string_view command_name(Command c) {
  for (const auto& [name, cmd] : command_table()) {
    if (cmd == c) return name;
  }
  return "unknown";
}

std::pair<LadderPolynomial, LadderPolynomial> preset_pair(std::string_view name) {
  if (name == "shear-k1") return {power(LadderPolynomial::position(), 2), LadderPolynomial::momentum()};
  if (name == "xp-constant") return {LadderPolynomial::position(), LadderPolynomial::momentum()};
  if (name == "squeeze-inf") {
    return {power(LadderPolynomial::creation(), 2) + power(LadderPolynomial::annihilation(), 2),
            LadderPolynomial::momentum()};
  }
  throw ValidationError(fmt::format("unknown preset '{}'", name));
}

double parse_angle(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  const auto pi_at = s.find("pi");
  if (pi_at == std::string::npos) return parse_real(s, "angle");

  std::string head = s.substr(0, pi_at);
  const std::string tail = s.substr(pi_at + 2);
  double factor = 1.0;
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (head == "-") {
    factor = -1.0;
  } else if (head == "+" || head.empty()) {
    factor = 1.0;
  } else {
    factor = parse_real(head, "angle multiplier");
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw ValidationError("malformed angle '" + std::string(text) + "'");
    divisor = parse_real(tail.substr(1), "angle divisor");
    if (divisor == 0.0) throw ValidationError("angle divisor must be nonzero");
  }
  return factor * std::numbers::pi / divisor;
}

std::vector<int> parse_int_list(std::string_view text) {
  const std::string_view s = trim(text);
  std::vector<int> out;
  if (const auto dots = s.find(".."); dots != std::string_view::npos) {
    const int lo = parse_int(s.substr(0, dots), "range start");
    const int hi = parse_int(s.substr(dots + 2), "range end");
    if (hi < lo) throw ValidationError(fmt::format("empty range {}..{}", lo, hi));
    if (static_cast<long>(hi) - lo >= kMaxListLength) throw ValidationError("range too long");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_int(s.substr(start, comma - start), "list entry"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() > kMaxListLength) throw ValidationError("list too long");
  return out;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ValidationError("empty complex number");
  if (s.back() != 'i') return {parse_real(s, "complex number"), 0.0};
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, "imaginary part");
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split), "real part"), imag_part(s.substr(split))};
}

ProbeDescriptor parse_probe(std::string_view text, Complex default_alpha) {
  const std::string_view s = trim(text);
  const auto colon = s.find(':');
  const std::string_view kind = s.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : s.substr(colon + 1);
  if (kind == "vacuum" && arg.empty()) return VacuumProbe{};
  if (kind == "coherent") return CoherentProbe{arg.empty() ? default_alpha : parse_complex(arg)};
  if (kind == "squeezed" && !arg.empty()) {
    const auto comma = arg.find(',');
    SqueezedVacuumProbe p;
    p.r = parse_real(arg.substr(0, comma), "squeezing r");
    if (comma != std::string_view::npos) p.phi = parse_angle(arg.substr(comma + 1));
    return p;
  }
  throw ValidationError(fmt::format("unknown probe '{}'", s));
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RawOptions raw;
  auto app = build_app(raw, true);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  return parse_with(raw, [&] { app->parse(reversed); });
}

RunConfig parse_config_text(std::string_view text) {
  RawOptions raw;
  auto app = build_app(raw, false);
  std::istringstream in{std::string(text)};
  return parse_with(raw, [&] { app->parse_from_stream(in); });
}

}  // namespace ncmetro
