#pragma once

// File formats: snapshots (raw little-endian float64 + JSON sidecar),
// diagnostics series CSV, and 1D field CSV.  Every float is written with 17
// significant digits so a re-read reproduces the in-memory value exactly.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "genmax/chi_solver.hpp"

namespace genmax::io {

/// "%.17g"
std::string format_double(double x);
/// Inverse of format_double; the whole string must be a number.
double parse_double(const std::string& s);

/// Writes `<stem>.bin` (fields in FieldState::kFieldOrder, each grid.size()
/// values, point index z-fastest) and `<stem>.json` (the header).  Returns the
/// header path.
std::filesystem::path write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                     const FieldState& s);

/// Reads a snapshot from its JSON header path.  Throws std::runtime_error on
/// malformed or mismatched files.
FieldState read_snapshot(const std::filesystem::path& header);

/// Columns: z, Ex, Ey, Ez, Bx, By, Bz, chi_re, chi_im, chi_re_t, chi_im_t.
void write_fields_csv_1d(std::ostream& os, const FieldState& s);

/// Columns: t, gauss_e, gauss_b, curl_j, continuity, energy.
void write_diagnostics_csv(std::ostream& os, const std::vector<Diagnostics>& series);
std::vector<Diagnostics> read_diagnostics_csv(std::istream& is);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace genmax::io
