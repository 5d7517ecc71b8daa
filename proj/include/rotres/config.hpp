// Plain "key = value" run configuration with '#' comments.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rotres/solver.hpp"

namespace rotres {

struct RunConfig {
  SolverConfig solver;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  double u0_h1 = 1.0;          // H^1 norm of the seeded initial field
  std::vector<double> omegas;  // for converge
  int checkpoint_every = 0;    // write a checkpoint every k samples (0: final only)
  std::map<std::string, std::string> entries;  // as read, for the manifest
};

/// Recognised keys: system, nu, alpha, omega, N, dt, T, seed, out_dir, scheme,
/// samples, u0_h1, omegas, checkpoint_every, cfl_limit. Throws ConfigError
/// naming the key for unknown keys, duplicates, malformed values and values
/// outside the solver's admissible range.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::filesystem::path& path);

SystemKind parse_system(const std::string& s);
Scheme parse_scheme(const std::string& s);
std::vector<double> parse_double_list(const std::string& key, const std::string& s);

}  // namespace rotres
