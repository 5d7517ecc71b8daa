#include "rotres/report.hpp"

#include <fftw3.h>
#include <gmp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rotres {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void Manifest::write_artifact(const std::filesystem::path& path, std::string_view data, const std::string& kind) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(data.data(), static_cast<std::streamsize>(data.size()));
  os.close();
  outputs_.push_back({path.string(), kind, hex64(fnv1a64(data)), data.size()});
}

void Manifest::add_artifact(const std::filesystem::path& path, const std::string& kind) {
  const std::string data = read_file(path);
  outputs_.push_back({path.string(), kind, hex64(fnv1a64(data)), data.size()});
}

nlohmann::json Manifest::to_json() const {
  nlohmann::json j;
  j["schema"] = "rotres-manifest/1";
  j["command"] = command_;
  j["config"] = config;
  j["seed"] = seed;
  j["versions"] = library_versions();
  j["inputs"] = inputs;
  j["outputs"] = nlohmann::json::array();
  for (const auto& a : outputs_) {
    j["outputs"].push_back({{"path", a.path}, {"kind", a.kind}, {"fnv1a64", a.fnv1a64}, {"bytes", a.bytes}});
  }
  j["wallclock_s"] = wallclock_s;
  j["pass"] = pass;
  j["summary"] = summary;
  return j;
}

void Manifest::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << to_json().dump(2) << '\n';
}

std::string validate_manifest(const nlohmann::json& j) {
  if (!j.is_object()) return "manifest is not an object";
  const std::pair<const char*, nlohmann::json::value_t> fields[] = {
      {"schema", nlohmann::json::value_t::string},   {"command", nlohmann::json::value_t::string},
      {"config", nlohmann::json::value_t::object},   {"seed", nlohmann::json::value_t::number_unsigned},
      {"versions", nlohmann::json::value_t::object}, {"inputs", nlohmann::json::value_t::array},
      {"outputs", nlohmann::json::value_t::array},   {"wallclock_s", nlohmann::json::value_t::number_float},
      {"pass", nlohmann::json::value_t::boolean},    {"summary", nlohmann::json::value_t::object},
  };
  for (const auto& [name, type] : fields) {
    if (!j.contains(name)) return std::string("missing field ") + name;
    const auto t = j.at(name).type();
    const bool numeric_ok = type == nlohmann::json::value_t::number_float && j.at(name).is_number();
    const bool unsigned_ok = type == nlohmann::json::value_t::number_unsigned && j.at(name).is_number_integer() &&
                             j.at(name).get<std::int64_t>() >= 0;
    if (t != type && !numeric_ok && !unsigned_ok) return std::string("wrong type for ") + name;
  }
  if (j["schema"] != "rotres-manifest/1") return "unknown schema";
  for (const auto& in : j["inputs"]) {
    if (!in.is_string()) return "inputs must be strings";
  }
  for (const auto& a : j["outputs"]) {
    if (!a.is_object() || !a.contains("path") || !a.contains("kind") || !a.contains("fnv1a64") ||
        !a.contains("bytes")) {
      return "output entry lacks path/kind/fnv1a64/bytes";
    }
    if (!a["path"].is_string() || !a["kind"].is_string() || !a["bytes"].is_number_integer()) {
      return "output entry has wrong types";
    }
    const auto& h = a["fnv1a64"];
    if (!h.is_string() || h.get<std::string>().size() != 16 ||
        h.get<std::string>().find_first_not_of("0123456789abcdef") != std::string::npos) {
      return "output hash must be 16 lowercase hex digits";
    }
  }
  return "";
}

nlohmann::json library_versions() {
  nlohmann::json j;
  j["rotres"] = "0.1.0";
  j["fftw"] = std::string(fftw_version);
  j["gmp"] = std::string(gmp_version);
  j["compiler"] = std::string(__VERSION__);
  return j;
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["lemma"] = r.lemma;
  j["trials"] = r.trials;
  j["max_abs"] = r.max_abs;
  if (std::isfinite(r.tolerance)) {
    j["tolerance"] = r.tolerance;
  } else {
    j["tolerance"] = nullptr;
  }
  j["pass"] = r.pass;
  return j;
}

namespace {

constexpr const char* kTriadMagic = "rotres-triads/1";

std::string cache_key(int N) { return std::string(kTriadMagic) + "|all_omega_zero|cube|L=" + std::to_string(N); }

}  // namespace

std::filesystem::path triad_cache_path(const std::filesystem::path& dir, int N) {
  return dir / ("triads_N" + std::to_string(N) + "_" + hex64(fnv1a64(cache_key(N))) + ".txt");
}

std::string encode_triads(const ResonantSet& set) {
  std::ostringstream os;
  os << kTriadMagic << ' ' << set.L << ' ' << static_cast<int>(set.mode) << ' ' << static_cast<int>(set.norm) << ' '
     << set.triads.size() << '\n';
  for (const auto& t : set.triads) {
    os << t.n.n1 << ' ' << t.n.n2 << ' ' << t.n.n3 << ' ' << t.k.n1 << ' ' << t.k.n2 << ' ' << t.k.n3 << ' '
       << int(t.sigma_mask) << '\n';
  }
  const std::string body = os.str();
  return body + "fnv1a64 " + hex64(fnv1a64(body)) + '\n';
}

ResonantSet decode_triads(std::string_view text) {
  const auto tail = text.rfind("fnv1a64 ");
  if (tail == std::string_view::npos) throw InvalidInput("triad cache lacks a hash line");
  const std::string_view body = text.substr(0, tail);
  std::string stored(text.substr(tail + 8));
  while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
  if (stored != hex64(fnv1a64(body))) throw InvalidInput("triad cache hash mismatch");

  std::istringstream is{std::string(body)};
  std::string magic;
  int mode = 0, norm = 0;
  std::size_t count = 0;
  ResonantSet set;
  if (!(is >> magic >> set.L >> mode >> norm >> count) || magic != kTriadMagic) {
    throw InvalidInput("bad triad cache header");
  }
  set.mode = static_cast<EnumerationMode>(mode);
  set.norm = static_cast<TruncationNorm>(norm);
  set.triads.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Triad t;
    int mask = 0;
    if (!(is >> t.n.n1 >> t.n.n2 >> t.n.n3 >> t.k.n1 >> t.k.n2 >> t.k.n3 >> mask) || mask <= 0 || mask > 255) {
      throw InvalidInput("bad triad cache record " + std::to_string(i));
    }
    t.m = t.n - t.k;
    t.sigma_mask = static_cast<std::uint8_t>(mask);
    for (int s = 0; s < 8; ++s) {
      if (mask & (1 << s)) {
        t.sigma = SignTriple::from_index(s);
        break;
      }
    }
    t.certificate = omega_is_zero_exact(t.n, t.k, t.m, t.sigma).value;
    set.triads.push_back(t);
  }
  return set;
}

ResonantSet load_or_build_triads(const std::filesystem::path& dir, int N, bool* built) {
  const auto path = triad_cache_path(dir, N);
  if (std::filesystem::exists(path)) {
    try {
      ResonantSet set = decode_triads(read_file(path));
      if (set.L == N && set.mode == EnumerationMode::all_omega_zero && set.norm == TruncationNorm::cube) {
        if (built) *built = false;
        return set;
      }
    } catch (const InvalidInput&) {
      // fall through and rebuild
    }
  }
  ResonantSet set = enumerate_resonant_triads(N, EnumerationMode::all_omega_zero, TruncationNorm::cube);
  std::filesystem::create_directories(dir);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write triad cache " + path.string());
  os << encode_triads(set);
  if (built) *built = true;
  return set;
}

}  // namespace rotres
