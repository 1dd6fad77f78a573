#include "genmax/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace genmax::io {

namespace {

using nlohmann::json;

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

}  // namespace

double parse_double(const std::string& s) {
  // from_chars, unlike stod, accepts subnormals without reporting ERANGE
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw std::runtime_error("bad number '" + s + "'");
  }
  return v;
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::filesystem::path write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                     const FieldState& s) {
  s.check_shape();
  std::filesystem::create_directories(dir);
  const std::string bin_name = stem + ".bin";

  std::ofstream bin(dir / bin_name, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write " + (dir / bin_name).string());
  for (const RealField* f : s.fields()) {
    for (double v : *f) {
      const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
      bin.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!bin) throw std::runtime_error("short write to " + (dir / bin_name).string());

  json shape = json::array();
  for (int d = 0; d < s.grid.dims; ++d) shape.push_back(s.grid.n);
  json header = {
      {"format", "genmax-snapshot"},
      {"version", 1},
      {"dtype", "float64"},
      {"endianness", "little"},
      {"grid", {{"n", s.grid.n}, {"L", s.grid.L}, {"dims", s.grid.dims}}},
      {"shape", shape},
      {"layout", "field-major; within a field x slowest, z fastest"},
      {"fields", FieldState::kFieldOrder},
      {"time", s.t},
      {"data_file", bin_name},
  };
  const auto header_path = dir / (stem + ".json");
  write_text(header_path, header.dump(2) + "\n");
  return header_path;
}

FieldState read_snapshot(const std::filesystem::path& header_path) {
  std::ifstream in(header_path);
  if (!in) throw std::runtime_error("cannot open " + header_path.string());
  json header;
  try {
    header = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed snapshot header: " + std::string(e.what()));
  }
  if (header.value("dtype", "") != "float64" || header.value("endianness", "") != "little") {
    throw std::runtime_error("unsupported snapshot encoding");
  }
  const auto names = header.at("fields").get<std::vector<std::string>>();
  if (names.size() != FieldState::kFieldOrder.size()) {
    throw std::runtime_error("unexpected field list in snapshot header");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] != FieldState::kFieldOrder[i]) {
      throw std::runtime_error("unexpected field order in snapshot header");
    }
  }

  Grid g;
  g.n = header.at("grid").at("n").get<int>();
  g.L = header.at("grid").at("L").get<double>();
  g.dims = header.at("grid").at("dims").get<int>();
  FieldState s = FieldState::zeros(g);
  s.t = header.at("time").get<double>();

  const auto bin_path = header_path.parent_path() / header.at("data_file").get<std::string>();
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + bin_path.string());
  for (RealField* f : s.fields()) {
    for (double& v : *f) {
      std::uint64_t bits = 0;
      bin.read(reinterpret_cast<char*>(&bits), sizeof bits);
      if (!bin) throw std::runtime_error("snapshot data file is truncated");
      v = std::bit_cast<double>(to_little(bits));
    }
  }
  if (bin.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("snapshot data file is longer than its header declares");
  }
  return s;
}

void write_fields_csv_1d(std::ostream& os, const FieldState& s) {
  if (s.grid.dims != 1) throw std::invalid_argument("field CSV is only written for 1D grids");
  os << "z";
  for (const char* name : FieldState::kFieldOrder) os << ',' << name;
  os << '\n';
  const auto f = s.fields();
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    os << format_double(s.grid.position(i).z());
    for (const RealField* field : f) os << ',' << format_double((*field)[i]);
    os << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, const std::vector<Diagnostics>& series) {
  os << "t,gauss_e,gauss_b,curl_j,continuity,energy\n";
  for (const auto& d : series) {
    os << format_double(d.t) << ',' << format_double(d.gauss_e_residual) << ','
       << format_double(d.gauss_b_residual) << ',' << format_double(d.curl_j_residual) << ','
       << format_double(d.continuity_residual) << ',' << format_double(d.energy) << '\n';
  }
}

std::vector<Diagnostics> read_diagnostics_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t,gauss_e,gauss_b,curl_j,continuity,energy") {
    throw std::runtime_error("unexpected diagnostics header");
  }
  std::vector<Diagnostics> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv_line(line);
    if (cols.size() != 6) throw std::runtime_error("diagnostics row must have 6 columns");
    out.push_back({parse_double(cols[0]), parse_double(cols[1]), parse_double(cols[2]),
                   parse_double(cols[3]), parse_double(cols[4]), parse_double(cols[5])});
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace genmax::io
