#include "rotres/field.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace rotres {

static_assert(std::endian::native == std::endian::little, "checkpoint IO assumes a little-endian host");

SpectralField::SpectralField(int trunc, std::uint32_t flags)
    : trunc_(trunc), flags_(flags) {
  if (trunc < 0) throw InvalidInput("truncation must be non-negative");
  const auto s = static_cast<std::size_t>(2 * trunc + 1);
  coeffs_.assign(s * s * s, Vec3c{});
}

void require_same_trunc(const SpectralField& a, const SpectralField& b) {
  if (a.trunc() != b.trunc()) {
    throw InvalidInput("truncation mismatch: " + std::to_string(a.trunc()) + " vs " + std::to_string(b.trunc()));
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  axpy(1.0, o);
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  axpy(-1.0, o);
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (auto& v : coeffs_) {
    for (auto& c : v) c *= s;
  }
  return *this;
}

void SpectralField::axpy(cplx s, const SpectralField& b) {
  require_same_trunc(*this, b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (int j = 0; j < 3; ++j) coeffs_[i][j] += s * b.coeffs_[i][j];
  }
}

SpectralField SpectralField::retruncated(int trunc) const {
  SpectralField out(trunc, flags_);
  const int lim = std::min(trunc, trunc_);
  for (int a = -lim; a <= lim; ++a) {
    for (int b = -lim; b <= lim; ++b) {
      for (int c = -lim; c <= lim; ++c) {
        const FreqVec n{a, b, c};
        out.at(n) = at(n);
      }
    }
  }
  return out;
}

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& v : f.coeffs()) m = std::max(m, std::sqrt(norm2(v)));
  return m;
}

double divergence_defect(const SpectralField& f) {
  const double scale = max_abs(f);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const FreqVec n = f.mode(i);
    if (n.is_zero()) continue;
    const auto& u = f[i];
    const cplx d = static_cast<double>(n.n1) * u[0] + static_cast<double>(n.n2) * u[1] + static_cast<double>(n.n3) * u[2];
    worst = std::max(worst, std::abs(d) / std::sqrt(static_cast<double>(norm_sq(n))));
  }
  return worst / scale;
}

double hermitian_defect(const SpectralField& f) {
  const double scale = max_abs(f);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const FreqVec n = f.mode(i);
    const auto& u = f[i];
    const auto& w = f.at(-n);
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(w[j] - std::conj(u[j])));
  }
  return worst / scale;
}

void require_divergence_free(const SpectralField& f, double tol) {
  const double d = divergence_defect(f);
  if (d > tol) {
    throw ContractViolation("field is not divergence-free (relative defect " + std::to_string(d) + ")");
  }
}

cplx hs_inner(const SpectralField& f, const SpectralField& g, double s) {
  require_same_trunc(f, g);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const FreqVec n = f.mode(i);
    if (n.is_zero()) continue;
    const double w = s == 0.0 ? 1.0 : std::pow(static_cast<double>(norm_sq(n)), s);
    acc += w * inner(f[i], g[i]);
  }
  return acc;
}

double hs_norm(const SpectralField& f, double s) { return std::sqrt(std::max(0.0, hs_inner(f, f, s).real())); }

void PlaneField::axpy(cplx s, const PlaneField& b) {
  if (b.trunc_ != trunc_) throw InvalidInput("plane field truncation mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * b.coeffs_[i];
}

double hs_norm(const PlaneField& f, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto [a, b] = f.mode(i);
    const auto q = a * a + b * b;
    if (q == 0) continue;
    acc += std::pow(static_cast<double>(q), s) * std::norm(f[i]);
  }
  return std::sqrt(acc);
}

namespace {

template <class T>
void put(std::vector<std::uint8_t>& out, std::size_t& pos, T v) {
  std::memcpy(out.data() + pos, &v, sizeof(T));
  pos += sizeof(T);
}

template <class T>
T get(std::span<const std::uint8_t> in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw InvalidInput("checkpoint truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

constexpr char kMagic[8] = {'R', 'O', 'T', 'R', 'E', 'S', '0', '1'};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const SpectralField& f, const CheckpointMeta& meta) {
  std::vector<std::uint8_t> out(kCheckpointHeaderBytes + f.size() * 48);
  std::memcpy(out.data(), kMagic, 8);
  std::size_t pos = 8;
  put<std::uint32_t>(out, pos, static_cast<std::uint32_t>(f.trunc()));
  put<std::uint32_t>(out, pos, f.flags());
  put<double>(out, pos, meta.nu);
  put<double>(out, pos, meta.alpha);
  put<double>(out, pos, meta.omega);
  put<double>(out, pos, meta.t);
  for (const auto& v : f.coeffs()) {
    for (const auto& c : v) {
      put<double>(out, pos, c.real());
      put<double>(out, pos, c.imag());
    }
  }
  return out;
}

SpectralField decode_checkpoint(std::span<const std::uint8_t> bytes, CheckpointMeta* meta) {
  if (bytes.size() < kCheckpointHeaderBytes || std::memcmp(bytes.data(), kMagic, 8) != 0) {
    throw InvalidInput("not a ROTRES01 checkpoint");
  }
  std::size_t pos = 8;
  const auto n = get<std::uint32_t>(bytes, pos);
  const auto flags = get<std::uint32_t>(bytes, pos);
  CheckpointMeta m;
  m.nu = get<double>(bytes, pos);
  m.alpha = get<double>(bytes, pos);
  m.omega = get<double>(bytes, pos);
  m.t = get<double>(bytes, pos);
  if (n > 1024) throw InvalidInput("checkpoint truncation out of range");
  SpectralField f(static_cast<int>(n), flags);
  if (bytes.size() != kCheckpointHeaderBytes + f.size() * 48) throw InvalidInput("checkpoint size mismatch");
  for (auto& v : f.coeffs()) {
    for (auto& c : v) {
      const double re = get<double>(bytes, pos);
      const double im = get<double>(bytes, pos);
      c = {re, im};
    }
  }
  if (meta) *meta = m;
  return f;
}

void write_checkpoint(const std::filesystem::path& path, const SpectralField& f, const CheckpointMeta& meta) {
  const auto bytes = encode_checkpoint(f, meta);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

SpectralField read_checkpoint(const std::filesystem::path& path, CheckpointMeta* meta) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes, meta);
}

}  // namespace rotres
