// genmax: command-line front end for the generalized-Maxwell verification
// library.  Exit codes: 0 success, 1 a check failed, 2 usage or config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genmax/commands.hpp"
#include "genmax/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw genmax::UsageError(what + ": '" + cell + "' is not a number");
    }
  }
  if (out.size() != expected) {
    throw genmax::UsageError(what + " needs " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

genmax::Momentum3 parse_momentum(const std::string& text) {
  const auto v = parse_numbers(text, 3, "momentum");
  return {v[0], v[1], v[2]};
}

genmax::cplx parse_complex(const std::string& text) {
  const auto v = parse_numbers(text, 2, "complex value");
  return {v[0], v[1]};
}

std::vector<genmax::Mode> parse_modes(const std::string& text) {
  std::vector<genmax::Mode> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      out.push_back(genmax::parse_mode(cell));
    } catch (const std::invalid_argument& e) {
      throw genmax::UsageError(e.what());
    }
  }
  return out;
}

std::vector<genmax::NormalizationScheme> parse_schemes(const std::string& text) {
  std::vector<genmax::NormalizationScheme> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      out.push_back(genmax::NormalizationScheme::parse(cell));
    } catch (const std::invalid_argument& e) {
      throw genmax::UsageError(e.what());
    }
  }
  return out;
}

// Writes to <out>/<name> when an output directory was given, else stdout.
void emit(const std::string& out_dir, const std::string& name, const std::string& text) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(out_dir);
  std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
  if (!f) throw genmax::UsageError("cannot write into " + out_dir);
  f << text;
  std::cerr << "wrote " << (fs::path(out_dir) / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Maxwell equations: identity checks, spin-1 tables, solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(genmax::kVersion));

  std::string out_dir;
  std::string format = "csv";

  // verify
  auto* verify = app.add_subcommand("verify", "run every identity and residual check");
  std::uint64_t seed = 42;
  int trials = 1000;
  verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
  verify->add_option("--trials", trials, "random inputs per check")->capture_default_str();
  verify->add_option("--out", out_dir, "directory for verify_report.json");

  // polarization-table
  auto* table = app.add_subcommand("polarization-table", "tabulate u, B and E for given momenta");
  std::vector<std::string> momenta_text;
  std::string modes_text = "+1,0,-1,0t";
  double mass = 1.0;
  std::string scheme_text = "constant";
  table->add_option("--p", momenta_text, "momentum p1,p2,p3 (repeatable)")->required();
  table->add_option("--modes", modes_text, "comma-separated modes (+1,0,-1,0t)")
      ->capture_default_str();
  table->add_option("--mass", mass, "mass m > 0")->capture_default_str();
  table->add_option("--scheme", scheme_text, "normalization: constant|mass|sqrt_mass")
      ->capture_default_str();
  table->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", out_dir, "output directory (stdout if omitted)");

  // massless-scan
  auto* scan = app.add_subcommand("massless-scan", "fit the m -> 0 scaling of ||u||");
  std::string scan_p = "0.6,0.8,1.0";
  std::string scan_modes = "+1,0,-1,0t";
  std::string scan_schemes = "constant,mass,sqrt_mass";
  scan->add_option("--p", scan_p, "momentum p1,p2,p3")->capture_default_str();
  scan->add_option("--modes", scan_modes, "comma-separated modes")->capture_default_str();
  scan->add_option("--schemes", scan_schemes, "comma-separated schemes")->capture_default_str();
  scan->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", out_dir, "output directory (stdout if omitted)");

  // planewave
  auto* plane = app.add_subcommand("planewave", "build a chi-generalized plane wave");
  std::string plane_p = "0,0,1";
  int sign = 1;
  std::string amplitude_text = "1,0";
  std::string chi_text = "0,0";
  plane->add_option("--p", plane_p, "momentum p1,p2,p3")->capture_default_str();
  plane->add_option("--sign", sign, "energy sign +1|-1")->capture_default_str();
  plane->add_option("--amplitude", amplitude_text, "transverse amplitude re,im")
      ->capture_default_str();
  plane->add_option("--chi", chi_text, "chi re,im")->capture_default_str();
  plane->add_option("--out", out_dir, "output directory (stdout if omitted)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the periodic chi-Maxwell solver");
  std::string config_path;
  sim->add_option("--config", config_path, "JSON scenario")->required();
  sim->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const auto report = genmax::cmd_verify(seed, trials);
      for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual=" << c.residual
                  << "  tol=" << c.tolerance << '\n';
      }
      std::cout << (report.passed() ? "all checks passed" : "some checks FAILED") << '\n';
      if (!out_dir.empty()) emit(out_dir, "verify_report.json", report.to_json().dump(2) + "\n");
      return report.passed() ? kExitOk : kExitCheckFailed;
    }

    if (table->parsed()) {
      std::vector<genmax::Momentum3> momenta;
      for (const auto& t : momenta_text) momenta.push_back(parse_momentum(t));
      const auto rows = genmax::cmd_polarization_table(
          momenta, parse_modes(modes_text), mass, genmax::NormalizationScheme::parse(scheme_text));
      if (format == "json") {
        emit(out_dir, "polarization_table.json", genmax::polarization_json(rows).dump(2) + "\n");
      } else {
        std::ostringstream os;
        genmax::write_polarization_csv(os, rows);
        emit(out_dir, "polarization_table.csv", os.str());
      }
      return kExitOk;
    }

    if (scan->parsed()) {
      const auto p = parse_momentum(scan_p);
      const auto series = genmax::cmd_massless_scan(parse_modes(scan_modes),
                                                    parse_schemes(scan_schemes), p);
      const std::string summary = genmax::scan_summary_json(series, p).dump(2) + "\n";
      if (format == "json") {
        emit(out_dir, "massless_scan_summary.json", summary);
      } else {
        std::ostringstream os;
        genmax::write_scan_csv(os, series);
        emit(out_dir, "massless_scan.csv", os.str());
        if (!out_dir.empty()) emit(out_dir, "massless_scan_summary.json", summary);
      }
      return kExitOk;
    }

    if (plane->parsed()) {
      const json result = genmax::cmd_planewave(parse_momentum(plane_p), sign,
                                                parse_complex(amplitude_text),
                                                parse_complex(chi_text));
      emit(out_dir, "planewave.json", result.dump(2) + "\n");
      return kExitOk;
    }

    if (sim->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw genmax::UsageError("cannot open config " + config_path);
      json config;
      try {
        config = json::parse(in);
      } catch (const json::exception& e) {
        throw genmax::UsageError(std::string("config is not valid JSON: ") + e.what());
      }
      const auto base = fs::path(config_path).parent_path().string();
      const json summary = genmax::cmd_simulate(config, out_dir, base.empty() ? "." : base);
      std::cout << summary.dump(2) << '\n';
      return kExitOk;
    }
  } catch (const genmax::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
