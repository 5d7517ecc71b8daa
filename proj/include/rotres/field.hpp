// Truncated Fourier coefficient arrays on T^3 and T^2.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "rotres/lattice.hpp"

namespace rotres {

using cplx = std::complex<double>;
using Vec3c = std::array<cplx, 3>;
using Vec3r = std::array<double, 3>;

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

enum FieldFlag : std::uint32_t {
  kRealValued = 1u << 0,
  kDivergenceFree = 1u << 1,
  kMeanZero = 1u << 2,
};

inline constexpr std::uint32_t kPhysicalFlags = kRealValued | kDivergenceFree | kMeanZero;

inline cplx dot(const Vec3c& a, const Vec3c& b) {  // a . b
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline cplx inner(const Vec3c& a, const Vec3c& b) {  // (a | b) = sum a_j b_j^*
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}
inline double norm2(const Vec3c& a) { return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]); }

/// Vector-valued coefficients u_hat(n) for max(|n1|,|n2|,|n3|) <= N, stored
/// in lexicographic order of n (n1 slowest, each component from -N to N).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int trunc, std::uint32_t flags = 0);

  int trunc() const { return trunc_; }
  int side() const { return 2 * trunc_ + 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::uint32_t flags() const { return flags_; }
  void set_flags(std::uint32_t f) { flags_ = f; }
  bool has(FieldFlag f) const { return (flags_ & f) != 0; }

  bool contains(const FreqVec& n) const { return linf(n) <= trunc_; }
  std::size_t index(const FreqVec& n) const {
    const std::int64_t s = side();
    return static_cast<std::size_t>(((n.n1 + trunc_) * s + (n.n2 + trunc_)) * s + (n.n3 + trunc_));
  }
  FreqVec mode(std::size_t idx) const {
    const std::int64_t s = side();
    const auto i = static_cast<std::int64_t>(idx);
    return {i / (s * s) - trunc_, (i / s) % s - trunc_, i % s - trunc_};
  }

  Vec3c& operator[](std::size_t i) { return coeffs_[i]; }
  const Vec3c& operator[](std::size_t i) const { return coeffs_[i]; }
  Vec3c& at(const FreqVec& n) { return coeffs_[index(n)]; }
  const Vec3c& at(const FreqVec& n) const { return coeffs_[index(n)]; }

  std::span<Vec3c> coeffs() { return coeffs_; }
  std::span<const Vec3c> coeffs() const { return coeffs_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

  /// a += s * b
  void axpy(cplx s, const SpectralField& b);

  /// Copy into a different truncation (zero padding or truncating).
  SpectralField retruncated(int trunc) const;

 private:
  int trunc_ = 0;
  std::uint32_t flags_ = 0;
  std::vector<Vec3c> coeffs_;
};

void require_same_trunc(const SpectralField& a, const SpectralField& b);

/// Max over n != 0 of |n . u(n)| / (|n| max_n |u(n)|); 0 for the zero field.
double divergence_defect(const SpectralField& f);

/// Max over n of |u(-n) - u(n)^*| relative to max |u(n)|.
double hermitian_defect(const SpectralField& f);

/// Throws ContractViolation when the divergence defect exceeds tol.
void require_divergence_free(const SpectralField& f, double tol = 1e-13);

double max_abs(const SpectralField& f);

/// sum_{n != 0} |n|^{2s} (f(n) | g(n)); homogeneous weights, mean mode excluded.
cplx hs_inner(const SpectralField& f, const SpectralField& g, double s);
double hs_norm(const SpectralField& f, double s);

/// Scalar coefficients on the 2D box max(|n1|,|n2|) <= N.
class PlaneField {
 public:
  PlaneField() = default;
  explicit PlaneField(int trunc) : trunc_(trunc), coeffs_(static_cast<std::size_t>((2 * trunc + 1) * (2 * trunc + 1))) {}

  int trunc() const { return trunc_; }
  int side() const { return 2 * trunc_ + 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::size_t index(std::int64_t n1, std::int64_t n2) const {
    return static_cast<std::size_t>((n1 + trunc_) * side() + (n2 + trunc_));
  }
  std::array<std::int64_t, 2> mode(std::size_t idx) const {
    const auto i = static_cast<std::int64_t>(idx);
    return {i / side() - trunc_, i % side() - trunc_};
  }
  cplx& operator[](std::size_t i) { return coeffs_[i]; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
  cplx& at(std::int64_t n1, std::int64_t n2) { return coeffs_[index(n1, n2)]; }
  const cplx& at(std::int64_t n1, std::int64_t n2) const { return coeffs_[index(n1, n2)]; }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  void axpy(cplx s, const PlaneField& b);

 private:
  int trunc_ = 0;
  std::vector<cplx> coeffs_;
};

/// Homogeneous H^s norm of a 2D scalar field, mean mode excluded.
double hs_norm(const PlaneField& f, double s);

// ---------------------------------------------------------------------------
// ROTRES01 checkpoint format (little-endian):
//   char[8] "ROTRES01", u32 N, u32 flags, f64 nu, f64 alpha, f64 omega, f64 t,
//   then (2N+1)^3 modes in lexicographic n order, 3 complex numbers each as
//   (re, im) f64 pairs.

struct CheckpointMeta {
  double nu = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double t = 0.0;
};

inline constexpr std::size_t kCheckpointHeaderBytes = 48;

std::vector<std::uint8_t> encode_checkpoint(const SpectralField& f, const CheckpointMeta& meta);
SpectralField decode_checkpoint(std::span<const std::uint8_t> bytes, CheckpointMeta* meta = nullptr);

void write_checkpoint(const std::filesystem::path& path, const SpectralField& f, const CheckpointMeta& meta);
SpectralField read_checkpoint(const std::filesystem::path& path, CheckpointMeta* meta = nullptr);

}  // namespace rotres
