#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "bmlab/units.hpp"

namespace bmlab {

/// Numerical knobs shared by the solvers and the harness. Lengths are in
/// transverse oscillator lengths, times in 1/omega_T.
struct NumericSettings {
  std::size_t transverse_n = 32;
  std::size_t longitudinal_n = 512;
  std::size_t grid1d_n = 4096;
  double transverse_half_extent = 7.0;
  double longitudinal_half_extent = 0.0;  // 0 selects the box-sizing rule
  double dt_imag_start = 0.05;
  double dt_imag = 1e-3;
  double gs_tol = 1e-7;
  double dt_real = 0.01;
  int sample_every = 10;
  double window_periods = 1.25;
  double noise = 0.0;
  std::string fit_model = "T3";
};

struct RunConfig {
  units::PhysConfig phys;
  NumericSettings numeric;
  /// Every key with its resolved value, defaults included.
  std::map<std::string, std::string> resolved;

  /// Canonical `key = value` listing of `resolved`, sorted by key.
  std::string canonical_text() const;
  /// FNV-1a hash of canonical_text().
  std::uint64_t hash() const;
};

using KeyedValues = std::map<std::string, std::string>;

/// Reads `key = value` lines; `#` starts a comment. Unknown keys and
/// duplicates are rejected.
KeyedValues read_keyed_text(const std::string& text, const std::string& source = "<text>");

/// Applies defaults, converts and validates. Required key: a12_bohr.
RunConfig resolve_config(const KeyedValues& values);

RunConfig parse_config(const std::filesystem::path& path);

/// `key=value` override on top of an already resolved config.
RunConfig apply_override(const RunConfig& cfg, const std::string& assignment);

}  // namespace bmlab
