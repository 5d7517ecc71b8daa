#include "rotres/random_field.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace rotres {

namespace {

bool positive_half(const FreqVec& n) {
  if (n.n1 != 0) return n.n1 > 0;
  if (n.n2 != 0) return n.n2 > 0;
  return n.n3 > 0;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

cplx random_amplitude(std::mt19937_64& rng, const FreqVec& n) {
  const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
  return std::polar(1.0 / static_cast<double>(norm_sq(n)), phase);
}

SpectralField normalised(SpectralField f, double h1_norm) {
  const double h = hs_norm(f, 1.0);
  if (h > 0.0) f *= h1_norm / h;
  return f;
}

}  // namespace

SpectralField random_field(int trunc, std::uint64_t seed, double h1_norm, int support) {
  std::mt19937_64 rng(seed);
  HelicalField h(trunc);
  const SpectralField shape(trunc);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const FreqVec n = shape.mode(i);
    if (!positive_half(n)) continue;
    const bool keep = support < 0 || linf(n) <= support;
    for (int s = 0; s < 2; ++s) {
      const cplx c = random_amplitude(rng, n);
      if (!keep) continue;
      h[i][s] = c;
      h[shape.index(-n)][s] = std::conj(c);
    }
  }
  SpectralField f = helical_recompose(h);
  f.set_flags(kPhysicalFlags);
  return normalised(std::move(f), h1_norm);
}

SpectralField random_complex_field(int trunc, std::uint64_t seed, double h1_norm) {
  std::mt19937_64 rng(seed);
  HelicalField h(trunc);
  const SpectralField shape(trunc);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const FreqVec n = shape.mode(i);
    if (n.is_zero()) continue;
    for (int s = 0; s < 2; ++s) h[i][s] = random_amplitude(rng, n);
  }
  SpectralField f = helical_recompose(h);
  f.set_flags(kDivergenceFree | kMeanZero);
  return normalised(std::move(f), h1_norm);
}

SpectralField helical_mode_field(int trunc, const FreqVec& n, Helicity hel, cplx c) {
  if (n.is_zero()) throw InvalidMode("helical mode field needs n != 0");
  if (linf(n) > trunc) throw InvalidInput("mode " + to_string(n) + " outside truncation");
  HelicalField h(trunc);
  const SpectralField shape(trunc);
  const int s = static_cast<int>(hel);
  h[shape.index(n)][s] = c;
  h[shape.index(-n)][s] = std::conj(c);
  SpectralField f = helical_recompose(h);
  f.set_flags(kPhysicalFlags);
  return f;
}

}  // namespace rotres
