#pragma once

// Implementations behind the command-line subcommands.  Each returns data
// rather than printing so the tool and the tests share one code path.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "genmax/bw_fields.hpp"
#include "genmax/gersten.hpp"

namespace genmax {

inline constexpr const char* kVersion = "0.1.0";

struct CheckResult {
  std::string name;
  std::string anchor;  // the identity or relation being checked
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string version = kVersion;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Runs every algebraic and momentum-space check with `trials` random inputs
/// drawn from a single mt19937_64 stream seeded with `seed`.
/// Throws UsageError if trials < 1.
VerifyReport cmd_verify(std::uint64_t seed, int trials);

struct TableRow {
  Momentum3 p;
  std::string quantity;  // "u", "B" or "E"
  Mode lambda = Mode::plus;
  int energy_sign = +1;
  int component = 0;
  cplx value;
};

/// u rows for every requested mode, then B and E rows for both energy signs
/// for the spin-1 modes among them.  Throws NonpositiveMass for m <= 0.
std::vector<TableRow> cmd_polarization_table(const std::vector<Momentum3>& momenta,
                                             const std::vector<Mode>& modes, double m,
                                             const NormalizationScheme& scheme);

/// Header: p1,p2,p3,quantity,lambda,energy_sign,component,real,imag
void write_polarization_csv(std::ostream& os, const std::vector<TableRow>& rows);
std::vector<TableRow> read_polarization_csv(std::istream& is);
nlohmann::json polarization_json(const std::vector<TableRow>& rows);

struct ScanSeries {
  Mode lambda;
  std::string scheme;
  std::vector<ScanPoint> points;
  double slope = 0.0;
};

std::vector<ScanSeries> cmd_massless_scan(const std::vector<Mode>& modes,
                                          const std::vector<NormalizationScheme>& schemes,
                                          const Momentum3& p);
/// Columns: m, norm, mode, scheme
void write_scan_csv(std::ostream& os, const std::vector<ScanSeries>& series);
nlohmann::json scan_summary_json(const std::vector<ScanSeries>& series, const Momentum3& p);

/// Builds the generalized plane wave and reports E, Psi, chi and the residuals.
nlohmann::json cmd_planewave(const Momentum3& p, int energy_sign, cplx amplitude, cplx chi);

/// Runs the solver per the JSON config, writing snapshots, diagnostics.csv and
/// summary.json into `out_dir`.  Returns the summary.
nlohmann::json cmd_simulate(const nlohmann::json& config, const std::filesystem::path& out_dir,
                            const std::string& base_dir = ".");

}  // namespace genmax
