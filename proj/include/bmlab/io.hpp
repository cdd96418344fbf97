#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bmlab/deviation.hpp"
#include "bmlab/gp_solver.hpp"
#include "bmlab/grid.hpp"
#include "bmlab/units.hpp"

namespace bmlab::io {

/// Provenance written as `#` comment lines at the top of every CSV file.
struct OutputHeader {
  std::string command;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string units;
};

std::string header_comment(const OutputHeader& header);

/// Shortest round-trip decimal form of v.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws ContractError for an unknown column.
  const std::vector<double>& column(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const OutputHeader& header,
               const std::vector<std::string>& names,
               const std::vector<std::vector<double>>& columns);
CsvTable read_csv(const std::filesystem::path& path);

/// Binary layout, little-endian as in memory: "BMLF", u32 version, u32 rank,
/// u64 n[3], f64 min[3], f64 max[3], then interleaved re/im doubles with z
/// fastest. A 1D field has rank 1 and stores its axis in slot 0.
void write_field(const std::filesystem::path& path, const ComplexField& field);
ComplexField read_field(const std::filesystem::path& path);

/// Columns t_si, t_internal, ReO, ImO, p1, p2.
void write_trajectory(const std::filesystem::path& path, const OutputHeader& header,
                      const gp::Trajectory& tr, const units::ScaledConfig& cfg);
/// Reads t_internal and ImO from a trajectory file.
deviation::TimeSeries read_trajectory(const std::filesystem::path& path);

}  // namespace bmlab::io
