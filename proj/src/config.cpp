#include "rotres/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rotres {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key, "not a number: '" + v + "'");
  return x;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key, "not an integer: '" + v + "'");
  return x;
}

}  // namespace

SystemKind parse_system(const std::string& s) {
  if (s == "original") return SystemKind::original;
  if (s == "rotated") return SystemKind::rotated;
  if (s == "limit") return SystemKind::limit;
  if (s == "split") return SystemKind::split;
  throw ConfigError("system", "unknown system '" + s + "'");
}

Scheme parse_scheme(const std::string& s) {
  if (s == "if-rk2") return Scheme::if_rk2;
  if (s == "if-euler") return Scheme::if_euler;
  throw ConfigError("scheme", "unknown scheme '" + s + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    if (val.empty()) throw ConfigError(key, "empty value");
    if (!cfg.entries.emplace(key, val).second) throw ConfigError(key, "duplicate key");

    auto& s = cfg.solver;
    if (key == "system") s.system = parse_system(val);
    else if (key == "scheme") s.scheme = parse_scheme(val);
    else if (key == "nu") s.nu = to_double(key, val);
    else if (key == "alpha") s.alpha = to_double(key, val);
    else if (key == "omega") s.omega = to_double(key, val);
    else if (key == "N") s.N = to_int<int>(key, val);
    else if (key == "dt") s.dt = to_double(key, val);
    else if (key == "T") s.T = to_double(key, val);
    else if (key == "samples") s.samples = to_int<int>(key, val);
    else if (key == "cfl_limit") s.cfl_limit = to_double(key, val);
    else if (key == "seed") cfg.seed = to_int<std::uint64_t>(key, val);
    else if (key == "out_dir") cfg.out_dir = val;
    else if (key == "u0_h1") cfg.u0_h1 = to_double(key, val);
    else if (key == "omegas") cfg.omegas = parse_double_list(key, val);
    else if (key == "checkpoint_every") cfg.checkpoint_every = to_int<int>(key, val);
    else throw ConfigError(key, "unknown key");
  }
  cfg.solver.validate();
  if (!(cfg.u0_h1 >= 0.0)) throw ConfigError("u0_h1", "must be non-negative");
  if (cfg.checkpoint_every < 0) throw ConfigError("checkpoint_every", "must be non-negative");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot open " + path.string());
  return parse_config(is);
}

}  // namespace rotres
