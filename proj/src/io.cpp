#include "bmlab/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bmlab/errors.hpp"
#include "bmlab/version.hpp"

namespace bmlab::io {

namespace {
constexpr const char* kContract = "cli-harness/io";
constexpr std::uint32_t kFieldVersion = 1;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw Error(kContract, "cannot write '" + path.string() + "'");
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error(kContract, "truncated field file");
  return v;
}
}  // namespace

std::string header_comment(const OutputHeader& h) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(h.config_hash));
  std::string out = "# bmlab " + std::string(kVersion) + "\n";
  out += "# command: " + h.command + "\n";
  out += "# config_hash: " + std::string(hash) + "\n";
  out += "# seed: " + std::to_string(h.seed) + "\n";
  if (!h.units.empty()) out += "# units: " + h.units + "\n";
  return out;
}

std::string format_number(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error(kContract, "number formatting failed");
  return std::string(buf.data(), ptr);
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return columns[i];
  throw ContractError(kContract, "missing column '" + name + "'");
}

void write_csv(const std::filesystem::path& path, const OutputHeader& header,
               const std::vector<std::string>& names,
               const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size())
    throw ContractError(kContract, "column names and data differ in count");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw ContractError(kContract, "ragged columns");

  std::string text = header_comment(header);
  for (std::size_t j = 0; j < names.size(); ++j) text += (j ? "," : "") + names[j];
  text += "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) text += ',';
      text += format_number(columns[j][i]);
    }
    text += '\n';
  }
  auto out = open_out(path);
  out << text;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(kContract, "cannot read '" + path.string() + "'");
  CsvTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    const auto cells = split(line, ',');
    if (table.names.empty()) {
      table.names = cells;
      table.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != table.names.size())
      throw Error(kContract, path.string() + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(table.names.size()) + " cells");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v = 0.0;
      const char* end = cells[j].data() + cells[j].size();
      auto [ptr, ec] = std::from_chars(cells[j].data(), end, v);
      if (ec != std::errc() || ptr != end)
        throw Error(kContract, path.string() + ":" + std::to_string(lineno) + ": bad number '" +
                                   cells[j] + "'");
      table.columns[j].push_back(v);
    }
  }
  if (table.names.empty()) throw Error(kContract, "'" + path.string() + "' has no header row");
  return table;
}

void write_field(const std::filesystem::path& path, const ComplexField& field) {
  std::array<std::uint64_t, 3> n{1, 1, 1};
  std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
  std::uint32_t rank = 1;
  if (field.is_3d()) {
    const Grid3D& g = field.grid3d();
    rank = 3;
    const Grid1D* axes[3] = {&g.x, &g.y, &g.z};
    for (int a = 0; a < 3; ++a) {
      n[a] = axes[a]->n;
      lo[a] = axes[a]->z_min;
      hi[a] = axes[a]->z_max;
    }
  } else {
    const Grid1D& g = field.grid1d();
    n[0] = g.n;
    lo[0] = g.z_min;
    hi[0] = g.z_max;
  }
  auto out = open_out(path, std::ios::binary);
  out.write("BMLF", 4);
  put(out, kFieldVersion);
  put(out, rank);
  for (auto v : n) put(out, v);
  for (auto v : lo) put(out, v);
  for (auto v : hi) put(out, v);
  const auto values = field.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(std::complex<double>)));
  if (!out) throw Error(kContract, "failed writing '" + path.string() + "'");
}

ComplexField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(kContract, "cannot read '" + path.string() + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "BMLF", 4) != 0)
    throw Error(kContract, "'" + path.string() + "' is not a field file");
  if (get<std::uint32_t>(in) != kFieldVersion) throw Error(kContract, "unsupported field version");
  const auto rank = get<std::uint32_t>(in);
  std::array<std::uint64_t, 3> n;
  std::array<double, 3> lo, hi;
  for (auto& v : n) v = get<std::uint64_t>(in);
  for (auto& v : lo) v = get<double>(in);
  for (auto& v : hi) v = get<double>(in);

  ComplexField field;
  if (rank == 3) {
    Grid3D g{{lo[0], hi[0], n[0]}, {lo[1], hi[1], n[1]}, {lo[2], hi[2], n[2]}};
    g.validate();
    field = ComplexField(g);
  } else if (rank == 1) {
    Grid1D g{lo[0], hi[0], n[0]};
    g.validate();
    field = ComplexField(g);
  } else {
    throw Error(kContract, "unsupported field rank " + std::to_string(rank));
  }
  auto values = field.values();
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(std::complex<double>)));
  if (!in) throw Error(kContract, "truncated field file");
  return field;
}

void write_trajectory(const std::filesystem::path& path, const OutputHeader& header,
                      const gp::Trajectory& tr, const units::ScaledConfig& cfg) {
  std::vector<double> t_si(tr.times.size()), re(tr.times.size()), im(tr.times.size());
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    t_si[i] = tr.times[i] * cfg.time_unit();
    re[i] = tr.overlap[i].real();
    im[i] = tr.overlap[i].imag();
  }
  write_csv(path, header, {"t_si", "t_internal", "ReO", "ImO", "p1", "p2"},
            {t_si, tr.times, re, im, tr.p1, tr.p2});
}

deviation::TimeSeries read_trajectory(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  return {table.column("t_internal"), table.column("ImO")};
}

}  // namespace bmlab::io
