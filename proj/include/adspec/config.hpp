#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adspec {

/// Run configuration shared by all pipeline commands. Parsed from a flat
/// key=value file with '#' comments; serialize_config() emits the canonical
/// form (sorted keys, shortest round-trip numerals) and
/// parse_config(serialize_config(c)) reproduces c exactly.
struct RunConfig {
  std::string command;          // generate|spectrum|stats|entangle|gaps|flow
  int n = 10;                   // qubits / SAT variables
  double alpha = 3.0;           // clause density, m = round(alpha * n)
  int count = 1;                // ensemble size (generate, gaps)
  std::uint64_t seed = 1;       // base seed; instance i uses seed + i
  std::vector<int> n_list;      // gaps: sizes for the scaling table; {n} when empty

  double t_start = 0.0;         // t grid, inclusive endpoints
  double t_stop = 1.0;
  int t_points = 21;
  double t_snapshot = 0.5;      // stats: the single t analysed

  std::string window = "core";  // core|low|full (stats)
  double window_lo = 0.2;       // core window, spectrum fractions
  double window_hi = 0.8;

  double bin_width = 0.1;       // spacing histograms
  double s_max = 4.0;

  double grid_step = 0.02;      // gaps: coarse scan spacing
  double tol = 1e-6;            // gaps: refinement bracket width

  std::vector<double> levels{0.1, 0.01, 0.001, 0.0001}; // flow isolines

  std::string out_dir = "out";
  int jobs = 0;                 // OpenMP threads; 0 = all available

  bool operator==(const RunConfig&) const = default;
};

/// Parse key=value text over defaults. Throws ConfigError naming the
/// offending key on unknown keys, duplicates, or unparseable values.
RunConfig parse_config(const std::string& text);

/// Read and parse a config file. Throws ConfigError on I/O failure.
RunConfig load_config_file(const std::string& path);

/// Canonical text form: one key=value line per field, keys sorted.
std::string serialize_config(const RunConfig& config);

/// Apply ADSPEC_<KEY> environment overrides (e.g. ADSPEC_OUT_DIR, ADSPEC_N).
void apply_env_overrides(RunConfig& config);

/// Range and cap checks for every field the command uses. Throws ConfigError
/// naming the field.
void validate(const RunConfig& config);

/// Shortest decimal form that parses back to the exact same double. Used for
/// config serialization and all CSV output, so files are locale-independent
/// and byte-stable.
std::string format_double(double value);

} // namespace adspec
