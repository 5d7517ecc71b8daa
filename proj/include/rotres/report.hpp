// Artifact emission: content hashes, run manifests, verification reports and
// the on-disk resonant-triad cache.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rotres/resonance.hpp"

namespace rotres {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct Artifact {
  std::string path;
  std::string kind;
  std::string fnv1a64;
  std::uintmax_t bytes = 0;
};

/// Manifest schema "rotres-manifest/1":
///   schema: string, command: string, config: object, seed: unsigned,
///   versions: object of strings, inputs: [string],
///   outputs: [{path, kind, fnv1a64 (16 hex digits), bytes}],
///   wallclock_s: number, pass: bool, summary: object.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  double wallclock_s = 0.0;
  bool pass = true;
  nlohmann::json summary = nlohmann::json::object();

  /// Writes data to path and records its hash.
  void write_artifact(const std::filesystem::path& path, std::string_view data, const std::string& kind);
  /// Records an artifact that was written elsewhere.
  void add_artifact(const std::filesystem::path& path, const std::string& kind);
  const std::vector<Artifact>& outputs() const { return outputs_; }

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::string command_;
  std::vector<Artifact> outputs_;
};

/// Empty when j conforms to the manifest schema, else a description of the first problem.
std::string validate_manifest(const nlohmann::json& j);

nlohmann::json library_versions();

struct VerifyReport {
  std::string lemma;
  std::int64_t trials = 0;
  double max_abs = 0.0;
  double tolerance = 0.0;  // non-finite: reported only, no threshold
  bool pass = false;
};

nlohmann::json to_json(const VerifyReport& r);

std::string read_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Triad cache for the all-omega-zero cube set at truncation N. The file name
// carries a hash of the enumeration key and the last line a hash of the body.

std::filesystem::path triad_cache_path(const std::filesystem::path& dir, int N);
std::string encode_triads(const ResonantSet& set);
/// Throws InvalidInput when the body hash does not match.
ResonantSet decode_triads(std::string_view text);
/// Loads a valid cache file or enumerates and writes one; *built tells which.
ResonantSet load_or_build_triads(const std::filesystem::path& dir, int N, bool* built = nullptr);

}  // namespace rotres
