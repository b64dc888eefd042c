#include "adspec/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <type_traits>

#include "adspec/eigen.hpp"
#include "adspec/errors.hpp"
#include "adspec/hamiltonian.hpp"
#include "adspec/sat.hpp"

namespace adspec {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError("invalid value for " + key + ": '" + value + "'");
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  if (value.empty()) return out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t comma = value.find(',', pos);
    const std::string item =
        trim(value.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    out.push_back(parse_number<T>(key, item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, double>)
      out += format_double(values[i]);
    else
      out += std::to_string(values[i]);
  }
  return out;
}

void assign(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "alpha")
    c.alpha = parse_number<double>(key, value);
  else if (key == "bin_width")
    c.bin_width = parse_number<double>(key, value);
  else if (key == "command")
    c.command = value;
  else if (key == "count")
    c.count = parse_number<int>(key, value);
  else if (key == "grid_step")
    c.grid_step = parse_number<double>(key, value);
  else if (key == "jobs")
    c.jobs = parse_number<int>(key, value);
  else if (key == "levels")
    c.levels = parse_list<double>(key, value);
  else if (key == "n")
    c.n = parse_number<int>(key, value);
  else if (key == "n_list")
    c.n_list = parse_list<int>(key, value);
  else if (key == "out_dir")
    c.out_dir = value;
  else if (key == "s_max")
    c.s_max = parse_number<double>(key, value);
  else if (key == "seed")
    c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "t_points")
    c.t_points = parse_number<int>(key, value);
  else if (key == "t_snapshot")
    c.t_snapshot = parse_number<double>(key, value);
  else if (key == "t_start")
    c.t_start = parse_number<double>(key, value);
  else if (key == "t_stop")
    c.t_stop = parse_number<double>(key, value);
  else if (key == "tol")
    c.tol = parse_number<double>(key, value);
  else if (key == "window")
    c.window = value;
  else if (key == "window_hi")
    c.window_hi = parse_number<double>(key, value);
  else if (key == "window_lo")
    c.window_lo = parse_number<double>(key, value);
  else
    throw ConfigError("unknown key: " + key);
}

const char* const kKeys[] = {"alpha",  "bin_width", "command",    "count",   "grid_step",
                             "jobs",   "levels",    "n",          "n_list",  "out_dir",
                             "s_max",  "seed",      "t_points",   "t_snapshot", "t_start",
                             "t_stop", "tol",       "window",     "window_hi",  "window_lo"};

std::string value_of(const RunConfig& c, const std::string& key) {
  if (key == "alpha") return format_double(c.alpha);
  if (key == "bin_width") return format_double(c.bin_width);
  if (key == "command") return c.command;
  if (key == "count") return std::to_string(c.count);
  if (key == "grid_step") return format_double(c.grid_step);
  if (key == "jobs") return std::to_string(c.jobs);
  if (key == "levels") return join_list(c.levels);
  if (key == "n") return std::to_string(c.n);
  if (key == "n_list") return join_list(c.n_list);
  if (key == "out_dir") return c.out_dir;
  if (key == "s_max") return format_double(c.s_max);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "t_points") return std::to_string(c.t_points);
  if (key == "t_snapshot") return format_double(c.t_snapshot);
  if (key == "t_start") return format_double(c.t_start);
  if (key == "t_stop") return format_double(c.t_stop);
  if (key == "tol") return format_double(c.tol);
  if (key == "window") return c.window;
  if (key == "window_hi") return format_double(c.window_hi);
  if (key == "window_lo") return format_double(c.window_lo);
  return {};
}

} // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError("duplicate key: " + key);
    assign(c, key, value);
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const char* key : kKeys) {
    out += key;
    out += "=";
    out += value_of(config, key);
    out += "\n";
  }
  return out;
}

void apply_env_overrides(RunConfig& config) {
  for (const char* key : kKeys) {
    std::string env_name = "ADSPEC_";
    for (const char* p = key; *p; ++p)
      env_name += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
    if (const char* value = std::getenv(env_name.c_str()))
      assign(config, key, trim(value));
  }
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands{"generate", "spectrum", "stats",
                                              "entangle", "gaps",     "flow"};
  if (!commands.contains(c.command))
    throw ConfigError("command: must be one of generate|spectrum|stats|entangle|gaps|flow");

  const bool dense_command = c.command == "spectrum" || c.command == "stats" ||
                             c.command == "entangle" || c.command == "flow";
  const auto check_n = [&](int n, const std::string& field) {
    if (n < 3 || n > kMaxEnumerationVars)
      throw ConfigError(field + ": must lie in [3, " + std::to_string(kMaxEnumerationVars) + "]");
    if (dense_command && n > kDenseCapQubits)
      throw ConfigError(field + ": " + c.command + " needs the dense form, n <= " +
                        std::to_string(kDenseCapQubits));
    if (c.command == "gaps" && n > kLanczosCapQubits)
      throw ConfigError(field + ": gaps is capped at n <= " + std::to_string(kLanczosCapQubits));
    if (std::llround(c.alpha * n) < 1)
      throw ConfigError("alpha: round(alpha*n) must be >= 1");
  };
  check_n(c.n, "n");
  if (!(c.alpha > 0.0)) throw ConfigError("alpha: must be positive");
  std::set<int> distinct;
  for (int n : c.n_list) {
    check_n(n, "n_list");
    if (!distinct.insert(n).second) throw ConfigError("n_list: duplicate entry");
  }
  if (c.count < 1) throw ConfigError("count: must be >= 1");
  if (c.command == "gaps" && c.count < 2)
    throw ConfigError("count: gaps needs >= 2 instances for ensemble statistics");

  if (!(c.t_start >= 0.0 && c.t_start <= c.t_stop && c.t_stop <= 1.0))
    throw ConfigError("t_start/t_stop: need 0 <= t_start <= t_stop <= 1");
  if (c.t_points < 1) throw ConfigError("t_points: must be >= 1");
  if (c.t_points == 1 && c.t_start != c.t_stop)
    throw ConfigError("t_points: a single point needs t_start == t_stop");
  if (c.command == "flow" && !(c.t_start > 0.0))
    throw ConfigError("t_start: flow requires t_start > 0");
  if (!(c.t_snapshot >= 0.0 && c.t_snapshot <= 1.0))
    throw ConfigError("t_snapshot: must lie in [0, 1]");

  if (c.window != "core" && c.window != "low" && c.window != "full")
    throw ConfigError("window: must be one of core|low|full");
  if (!(0.0 <= c.window_lo && c.window_lo < c.window_hi && c.window_hi <= 1.0))
    throw ConfigError("window_lo/window_hi: need 0 <= lo < hi <= 1");

  if (!(c.bin_width > 0.0)) throw ConfigError("bin_width: must be positive");
  if (!(c.s_max > c.bin_width)) throw ConfigError("s_max: must exceed bin_width");
  if (!(c.grid_step > 0.0 && c.grid_step <= 0.05))
    throw ConfigError("grid_step: must lie in (0, 0.05]");
  if (!(c.tol > 0.0 && c.tol <= 1e-4)) throw ConfigError("tol: must lie in (0, 1e-4]");

  if (c.command == "flow" && c.levels.empty())
    throw ConfigError("levels: flow needs at least one isoline level");
  for (double level : c.levels)
    if (level < 0.0) throw ConfigError("levels: must be >= 0");

  if (c.out_dir.empty()) throw ConfigError("out_dir: must not be empty");
  if (c.jobs < 0) throw ConfigError("jobs: must be >= 0");
}

} // namespace adspec
