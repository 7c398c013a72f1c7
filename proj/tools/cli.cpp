// Copyright 2026 The g24 Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "g24/error.hpp"
#include "g24/plucker.hpp"
#include "g24/schedule.hpp"
#include "g24/singular.hpp"

namespace g24::cli {

namespace {

std::string Trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !in.eof()) throw Error(ErrorCode::kParse, "bad value for " + key + ": '" + value + "'");
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kParse:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyRange:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

std::string JsonString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

// Commands ---------------------------------------------------------------

int Enumerate(const RunConfig& config, int bound, const std::string& out_path, bool json,
              std::ostream& out) {
  if (bound > config.cap) {
    throw Error(ErrorCode::kBoundTooLarge,
                "bound " + std::to_string(bound) + " exceeds cap " + std::to_string(config.cap));
  }
  bool hit = false;
  const std::int64_t bound_sq = static_cast<std::int64_t>(bound) * bound;
  HeightTable table = LoadOrEnumerate(bound_sq, config.enumeration(), &hit);
  std::filesystem::path written =
      config.cache_dir.empty() ? std::filesystem::path() : CachePath(config.cache_dir, bound_sq);
  if (!out_path.empty()) {
    std::ostringstream os;
    WriteTable(table, os);
    WriteFile(out_path, os.str());
    written = out_path;
  }
  std::int64_t max_sq = table.size() ? table.entries().back().height_sq : 0;
  double max_h = std::sqrt(static_cast<double>(max_sq));
  if (json) {
    out << "{\"bound\": " << bound << ", \"count\": " << table.size()
        << ", \"max_height_sq\": " << max_sq << ", \"max_height\": " << FormatReal(max_h)
        << ", \"cache_hit\": " << (hit ? "true" : "false")
        << ", \"path\": " << JsonString(written.string()) << "}\n";
  } else {
    if (hit) out << "cache hit: " << CachePath(config.cache_dir, bound_sq).string() << "\n";
    out << "count " << table.size() << "\n"
        << "max height " << FormatReal(max_h) << " (height_sq " << max_sq << ")\n";
    if (!written.empty()) out << "written " << written.string() << "\n";
  }
  return kExitOk;
}

int Angles(const RunConfig& config, const std::string& a_text, const std::string& b_text,
           std::ostream& out) {
  RationalSubspace a = RationalSubspace::FromBasis(ParseBasis(a_text));
  RationalSubspace b = RationalSubspace::FromBasis(ParseBasis(b_text));
  AngleReport report = PrincipalSines(FrameOf(a), FrameOf(b), config.tolerances);
  std::string json = ToJson(report);
  json.pop_back();  // closing brace
  out << json << ", \"pairing_exact\": " << ToString(IncidencePairing(a, b)) << "}\n";
  return kExitOk;
}

struct ApproxRow {
  ApproxRecord record;
  ExponentRow stats;
};

std::vector<ApproxRow> ApproxRows(const RunConfig& config, const Frame& a, int t_max,
                                  const HeightTable& table) {
  std::vector<ExponentRow> stats = ExponentStats(a, t_max, table, config.tolerances);
  std::vector<ApproxRow> rows;
  for (int t = 1; t <= t_max; ++t) {
    rows.push_back(ApproxRow{PsiA(a, t, table, config.tolerances), stats[t - 1]});
  }
  return rows;
}

std::string FlagOf(const ApproxRecord& r) {
  if (r.incident) return "incident";
  if (r.below_tolerance) return "below_tolerance";
  return "";
}

int Approx(const RunConfig& config, const std::string& subspace, int t_max,
           const std::string& csv_path, bool json, std::ostream& out) {
  if (t_max < 1) throw Error(ErrorCode::kEmptyRange, "--tmax must be at least 1");
  if (t_max > config.cap) {
    throw Error(ErrorCode::kBoundTooLarge,
                "t_max " + std::to_string(t_max) + " exceeds cap " + std::to_string(config.cap));
  }
  Frame a = FrameOf(ParseBasis(subspace));
  HeightTable table =
      LoadOrEnumerate(static_cast<std::int64_t>(t_max) * t_max, config.enumeration());
  std::vector<ApproxRow> rows = ApproxRows(config, a, t_max, table);

  std::ostringstream csv;
  csv << "t,psi_A,best_plucker,H_psi,t2_scaled,H3_psi,flag\n";
  for (const ApproxRow& r : rows) {
    csv << r.stats.t << ',' << FormatReal(r.record.psi1) << ','
        << r.record.best.plucker().ToString() << ',' << FormatReal(r.record.h_psi) << ','
        << FormatReal(r.stats.t2_scaled) << ',' << FormatReal(r.record.h3_psi) << ','
        << FlagOf(r.record) << '\n';
  }
  if (!csv_path.empty()) WriteFile(csv_path, csv.str());
  if (json) {
    out << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ApproxRow& r = rows[i];
      out << (i ? ",\n " : "") << "{\"t\": " << r.stats.t
          << ", \"psi_A\": " << FormatReal(r.record.psi1)
          << ", \"best_plucker\": " << JsonString(r.record.best.plucker().ToString())
          << ", \"H_psi\": " << FormatReal(r.record.h_psi)
          << ", \"t2_scaled\": " << FormatReal(r.stats.t2_scaled)
          << ", \"H3_psi\": " << FormatReal(r.record.h3_psi)
          << ", \"flag\": " << JsonString(FlagOf(r.record)) << "}";
    }
    out << "]\n";
  } else if (csv_path.empty()) {
    out << csv.str();
  } else {
    out << "wrote " << rows.size() << " rows to " << csv_path << "\n";
  }
  return kExitOk;
}

int Singular(const RunConfig& config, const std::string& phi_spec, int stages,
             const std::string& out_path, int t_ver, bool json, std::ostream& out) {
  Schedule phi = Schedule::Parse(phi_spec);
  SingularOptions options;
  options.enumeration = config.enumeration();
  options.digits = config.digits;
  if (t_ver > 0) options.t_ver = t_ver;
  SingularCertificate cert = ConstructSingular(phi, stages, config.seed, options);
  std::string text = CertificateToJson(cert);
  if (!out_path.empty()) WriteFile(out_path, text);
  if (json) {
    out << text;
    return kExitOk;
  }
  for (const Stage& st : cert.stages) {
    out << "stage " << st.index << "  H^2 = " << ToString(st.height_sq())
        << "  radius ~ " << FormatReal(st.region.radius.convert_to<double>()) << "\n";
  }
  out << "output height_sq has " << ToString(cert.output.height_sq()).size() << " digits\n";
  if (!out_path.empty()) out << "certificate " << out_path << "\n";
  return kExitOk;
}

int Verify(const RunConfig& config, const std::string& cert_path, int t_ver, bool json,
           std::ostream& out) {
  VerifyOptions options;
  options.enumeration = config.enumeration();
  options.digits = config.digits;
  VerificationReport report = VerifyCertificateText(ReadFile(cert_path), t_ver, options);
  if (json) {
    out << report.ToJson() << "\n";
  } else {
    for (const CheckResult& c : report.checks) {
      out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(52) << c.name;
      if (c.slack) out << "  slack " << FormatReal(*c.slack);
      if (!c.detail.empty()) out << "  " << c.detail;
      out << "\n";
    }
    std::size_t failed = 0;
    for (const CheckResult& c : report.checks) failed += c.passed ? 0 : 1;
    out << (failed ? "FAILED: " + std::to_string(failed) + " check(s)" : std::string("all checks passed"))
        << "\n";
  }
  return report.AllPassed() ? kExitOk : kExitFailure;
}

int Plot(const std::string& csv_path, const std::string& svg_path, const std::string& phi_spec,
         double guide, bool json, std::ostream& out) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + csv_path);
  PlotInput data = ReadApproxCsv(in);
  WriteFile(svg_path, RenderSvg(data, phi_spec, guide));
  if (json) {
    out << "{\"rows\": " << data.t.size() << ", \"svg\": " << JsonString(svg_path) << "}\n";
  } else {
    out << "wrote " << svg_path << " (" << data.t.size() << " rows)\n";
  }
  return kExitOk;
}

}  // namespace

Settings ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
  Settings settings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key=value in " + path.string(), line_no, 1);
    }
    settings[Trim(line.substr(0, eq))] = Trim(line.substr(eq + 1));
  }
  return settings;
}

Settings SettingsFromEnvironment() {
  static const std::pair<const char*, const char*> kVars[] = {
      {"G24_CAP", "cap"},
      {"G24_CACHE_DIR", "cache_dir"},
      {"G24_DIGITS", "digits"},
      {"G24_SEED", "seed"},
  };
  Settings settings;
  for (const auto& [var, key] : kVars) {
    if (const char* v = std::getenv(var); v && *v) settings[key] = v;
  }
  return settings;
}

RunConfig ResolveConfig(const std::vector<Settings>& layers) {
  RunConfig config;
  config.cache_dir = DefaultCacheDir();
  for (const Settings& layer : layers) {
    for (const auto& [key, value] : layer) {
      if (key == "cap") {
        config.cap = ParseNumber<int>(key, value);
      } else if (key == "cache_dir") {
        config.cache_dir = value;
      } else if (key == "digits") {
        config.digits = ParseNumber<unsigned>(key, value);
      } else if (key == "seed") {
        config.seed = ParseNumber<std::uint64_t>(key, value);
      } else if (key == "tol_product") {
        config.tolerances.product = ParseNumber<double>(key, value);
      } else if (key == "tol_incidence") {
        config.tolerances.incidence = ParseNumber<double>(key, value);
      } else {
        throw Error(ErrorCode::kParse, "unknown setting '" + key + "'");
      }
    }
  }
  if (config.cap < 1) throw Error(ErrorCode::kInvalidArgument, "cap must be at least 1");
  if (config.digits < 15) throw Error(ErrorCode::kInvalidArgument, "digits must be at least 15");
  return config;
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational approximation of two-dimensional subspaces of R^4", "g24"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Settings flags;
  std::string cap, cache_dir, digits, seed;
  bool json = false;
  app.add_option("--config", config_path, "key=value config file (also G24_CONFIG)");
  app.add_option("--cap", cap, "largest enumeration bound t");
  app.add_option("--cache-dir", cache_dir, "height table cache directory");
  app.add_option("--digits", digits, "decimal digits for extended precision");
  app.add_option("--seed", seed, "random seed");
  app.add_flag("--json", json, "machine readable output");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate rational subspaces by height");
  int bound = 0;
  std::string table_out;
  enumerate->add_option("--bound", bound, "height bound t")->required();
  enumerate->add_option("--out", table_out, "copy of the table");

  auto* angles = app.add_subcommand("angles", "principal angles of two subspaces");
  std::string basis_a, basis_b;
  angles->add_option("--a", basis_a, "basis, e.g. \"1,0,0,0;0,1,0,0\"")->required();
  angles->add_option("--b", basis_b, "basis")->required();

  auto* approx = app.add_subcommand("approx", "best approximations psi_A(t)");
  std::string subspace, csv_out;
  int t_max = 0;
  approx->add_option("--subspace", subspace, "basis of A")->required();
  approx->add_option("--tmax", t_max, "largest t")->required();
  approx->add_option("--csv", csv_out, "CSV output path");

  auto* singular = app.add_subcommand("singular", "construct a singular certificate");
  std::string phi_spec, cert_out;
  int stages = 0;
  int t_ver = 0;
  singular->add_option("--phi", phi_spec, "t^-K, C*t^-K, C*t^-K/log or @table.csv")->required();
  singular->add_option("--stages", stages, "number of stages")->required();
  singular->add_option("--out", cert_out, "certificate path");
  singular->add_option("--t-ver", t_ver, "verification cap");

  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  std::string cert_in;
  verify->add_option("--cert", cert_in, "certificate path")->required();
  verify->add_option("--t-ver", t_ver, "verification cap (default: stored)");

  auto* plot = app.add_subcommand("plot", "SVG staircase of approx output");
  std::string plot_csv, svg_out, plot_phi;
  double guide = 0;
  plot->add_option("--csv", plot_csv, "approx CSV")->required();
  plot->add_option("--svg", svg_out, "SVG output path")->required();
  plot->add_option("--phi", plot_phi, "overlay phi(t)");
  plot->add_option("--guide", guide, "overlay C t^-3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::vector<Settings> layers;
    if (config_path.empty()) {
      if (const char* env = std::getenv("G24_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) layers.push_back(ReadConfigFile(config_path));
    layers.push_back(SettingsFromEnvironment());
    if (!cap.empty()) flags["cap"] = cap;
    if (!cache_dir.empty()) flags["cache_dir"] = cache_dir;
    if (!digits.empty()) flags["digits"] = digits;
    if (!seed.empty()) flags["seed"] = seed;
    layers.push_back(flags);
    RunConfig config = ResolveConfig(layers);

    if (*enumerate) {
      if (bound < 1) {
        err << "enumerate: --bound must be at least 1\n";
        return kExitUsage;
      }
      return Enumerate(config, bound, table_out, json, out);
    }
    if (*angles) return Angles(config, basis_a, basis_b, out);
    if (*approx) return Approx(config, subspace, t_max, csv_out, json, out);
    if (*singular) return Singular(config, phi_spec, stages, cert_out, t_ver, json, out);
    if (*verify) {
      if (!std::filesystem::exists(cert_in)) {
        err << "verify: no such file " << cert_in << "\n";
        return kExitUsage;
      }
      return Verify(config, cert_in, t_ver, json, out);
    }
    if (*plot) return Plot(plot_csv, svg_out, plot_phi, guide, json, out);
  } catch (const Error& e) {
    err << "g24: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitUsage;
}

}  // namespace g24::cli
