#include "bmlab/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bmlab/errors.hpp"

namespace bmlab {

namespace {

constexpr const char* kContract = "cli-harness/parse_config";

// Keys with their defaults. An empty default marks a required key.
const std::map<std::string, std::string>& known_keys() {
  static const std::map<std::string, std::string> keys = {
      // physics
      {"mass_amu", "86.909180527"},
      {"omega_T_hz", "350"},
      {"omega_L_hz", "3.5"},
      {"a12_bohr", ""},
      {"ratio_a11", "1.03"},
      {"ratio_a22", "0.97"},
      {"N", "1000"},
      // numerics
      {"transverse_n", "32"},
      {"longitudinal_n", "512"},
      {"grid1d_n", "4096"},
      {"transverse_half_extent", "7"},
      {"longitudinal_half_extent", "0"},
      {"dt_imag_start", "0.05"},
      {"dt_imag", "0.001"},
      {"gs_tol", "1e-7"},
      {"dt_real", "0.01"},
      {"sample_every", "10"},
      {"window_periods", "1.25"},
      {"noise", "0"},
      {"fit_model", "T3"},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError(kContract, "key '" + key + "': expected a number, got '" + value + "'");
  return out;
}

long to_long(const std::string& key, const std::string& value) {
  long out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(kContract, "key '" + key + "': expected an integer, got '" + value + "'");
  return out;
}

std::size_t to_grid_size(const std::string& key, const std::string& value) {
  const long n = to_long(key, value);
  if (n < 16 || (n & (n - 1)) != 0)
    throw ConfigError(kContract, "key '" + key + "': must be a power of two >= 16");
  return static_cast<std::size_t>(n);
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(kContract, "key '" + key + "': must be positive");
  return v;
}

}  // namespace

KeyedValues read_keyed_text(const std::string& text, const std::string& source) {
  KeyedValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ConfigError(kContract, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().contains(key))
      throw ConfigError(kContract, where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(kContract, where + ": key '" + key + "' has no value");
    if (!out.emplace(key, value).second)
      throw ConfigError(kContract, where + ": duplicate key '" + key + "'");
  }
  return out;
}

RunConfig resolve_config(const KeyedValues& values) {
  RunConfig cfg;
  for (const auto& [key, def] : known_keys()) {
    auto it = values.find(key);
    if (it != values.end()) {
      cfg.resolved[key] = it->second;
    } else if (def.empty()) {
      throw ConfigError(kContract, "missing required key '" + key + "'");
    } else {
      cfg.resolved[key] = def;
    }
  }
  for (const auto& [key, value] : values)
    if (!known_keys().contains(key)) throw ConfigError(kContract, "unknown key '" + key + "'");

  const auto& r = cfg.resolved;
  auto num = [&](const char* key) { return to_double(key, r.at(key)); };

  const double mass_amu = positive("mass_amu", num("mass_amu"));
  const double omega_T_hz = positive("omega_T_hz", num("omega_T_hz"));
  const double omega_L_hz = positive("omega_L_hz", num("omega_L_hz"));
  if (!(omega_L_hz < omega_T_hz))
    throw ConfigError(kContract, "key 'omega_L_hz': must be below omega_T_hz (cigar trap)");
  const double a12_bohr = positive("a12_bohr", num("a12_bohr"));
  const double ratio_a11 = positive("ratio_a11", num("ratio_a11"));
  const double ratio_a22 = positive("ratio_a22", num("ratio_a22"));
  const long N = to_long("N", r.at("N"));
  if (N < 2) throw ConfigError(kContract, "key 'N': must be at least 2");
  cfg.phys = units::make_config(mass_amu, omega_T_hz, omega_L_hz, a12_bohr, ratio_a11, ratio_a22, N);

  NumericSettings& n = cfg.numeric;
  n.transverse_n = to_grid_size("transverse_n", r.at("transverse_n"));
  n.longitudinal_n = to_grid_size("longitudinal_n", r.at("longitudinal_n"));
  n.grid1d_n = to_grid_size("grid1d_n", r.at("grid1d_n"));
  n.transverse_half_extent = positive("transverse_half_extent", num("transverse_half_extent"));
  n.longitudinal_half_extent = num("longitudinal_half_extent");
  if (n.longitudinal_half_extent < 0.0)
    throw ConfigError(kContract, "key 'longitudinal_half_extent': must be >= 0");
  n.dt_imag_start = positive("dt_imag_start", num("dt_imag_start"));
  n.dt_imag = positive("dt_imag", num("dt_imag"));
  if (n.dt_imag > n.dt_imag_start)
    throw ConfigError(kContract, "key 'dt_imag': must not exceed dt_imag_start");
  n.gs_tol = positive("gs_tol", num("gs_tol"));
  n.dt_real = positive("dt_real", num("dt_real"));
  const long every = to_long("sample_every", r.at("sample_every"));
  if (every < 1) throw ConfigError(kContract, "key 'sample_every': must be >= 1");
  n.sample_every = static_cast<int>(every);
  n.window_periods = num("window_periods");
  if (!(n.window_periods >= 1.0))
    throw ConfigError(kContract, "key 'window_periods': must be >= 1");
  n.noise = num("noise");
  if (n.noise < 0.0) throw ConfigError(kContract, "key 'noise': must be >= 0");
  n.fit_model = r.at("fit_model");
  if (n.fit_model != "T1" && n.fit_model != "T2" && n.fit_model != "T3")
    throw ConfigError(kContract, "key 'fit_model': must be one of T1, T2, T3");
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kContract, "cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return resolve_config(read_keyed_text(text.str(), path.string()));
}

RunConfig apply_override(const RunConfig& cfg, const std::string& assignment) {
  KeyedValues values = read_keyed_text(assignment, "--override");
  KeyedValues merged = cfg.resolved;
  for (auto& [k, v] : values) merged[k] = v;
  return resolve_config(merged);
}

std::string RunConfig::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : resolved) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bmlab
