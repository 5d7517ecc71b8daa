// Leray projection, the helical eigenbasis e^{+-}(n) of the projected Coriolis
// operator, and the Poincare propagator L(theta) it diagonalises.
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "rotres/field.hpp"

namespace rotres {

/// Helicity sign; index 0 is +, index 1 is -.
enum class Helicity : int { plus = 0, minus = 1 };

inline constexpr int sign_of(Helicity h) { return h == Helicity::plus ? 1 : -1; }

/// P(n) v = v - n (n.v)/|n|^2.
Vec3c leray_project(const FreqVec& n, const Vec3c& v);

struct HelicalBasis {
  Vec3c plus;
  Vec3c minus;
  const Vec3c& operator[](int idx) const { return idx == 0 ? plus : minus; }
};

/// e^{+-}(n) with the 1/sqrt(2) normalisation and the separate n^h = 0 branch.
/// Throws InvalidMode for n = 0.
HelicalBasis helical_basis(const FreqVec& n);

/// Per-mode basis vectors and dispersion ratio n3/|n| for a whole truncation box.
struct BasisTable {
  int trunc = 0;
  std::vector<HelicalBasis> basis;  // zero vectors at n = 0
  std::vector<double> freq;         // n3/|n|, 0 at n = 0
  std::vector<double> norm;         // |n|
};

/// Cached per truncation; safe to call concurrently.
std::shared_ptr<const BasisTable> basis_table(int trunc);

/// amps[i][0] = c^+(n_i), amps[i][1] = c^-(n_i), with a^sigma(n) = c^sigma e^sigma(n).
class HelicalField {
 public:
  HelicalField() = default;
  explicit HelicalField(int trunc)
      : trunc_(trunc), amps_(static_cast<std::size_t>((2 * trunc + 1) * (2 * trunc + 1) * (2 * trunc + 1))) {}

  int trunc() const { return trunc_; }
  std::size_t size() const { return amps_.size(); }
  std::array<cplx, 2>& operator[](std::size_t i) { return amps_[i]; }
  const std::array<cplx, 2>& operator[](std::size_t i) const { return amps_[i]; }
  std::span<std::array<cplx, 2>> amps() { return amps_; }
  std::span<const std::array<cplx, 2>> amps() const { return amps_; }

 private:
  int trunc_ = 0;
  std::vector<std::array<cplx, 2>> amps_;
};

enum class DecomposeMode {
  strict,   ///< reject input that is not divergence-free
  project,  ///< silently keep only the divergence-free part
};

HelicalField helical_decompose(const SpectralField& f, DecomposeMode mode = DecomposeMode::strict);

/// Flags of the result: divergence-free and mean-zero.
SpectralField helical_recompose(const HelicalField& h);

/// Multiplies c^sigma(n) by exp(-sigma i theta n3/|n|).
SpectralField poincare_propagate(const SpectralField& f, double theta);

/// cos(theta n3/|n|) a(n) - sin(theta n3/|n|) (n/|n|) x a(n).
SpectralField poincare_propagate_alt(const SpectralField& f, double theta);

/// Multiplies every mode by exp(-nu dt |n|^{2 alpha}).
void apply_dissipation(SpectralField& f, double nu, double alpha, double dt);

/// Spatial mean of the velocity: f(t) solving f' + Omega J f = 0, f(0) = u0_mean.
Vec3r mean_frame_shift(const Vec3r& u0_mean, double omega, double t);

}  // namespace rotres
