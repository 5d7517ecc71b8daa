// Seeded random divergence-free fields in helical variables.
#pragma once

#include <cstdint>

#include "rotres/helical.hpp"

namespace rotres {

/// Real, divergence-free, mean-zero field with |c^sigma(n)| proportional to
/// |n|^-2 and uniform phases, scaled to the requested H^1 norm. Modes with
/// max|n_i| > support are left empty (support < 0 means the whole box).
SpectralField random_field(int trunc, std::uint64_t seed, double h1_norm = 1.0, int support = -1);

/// Same spectrum but without Hermitian symmetry, so the physical field is complex.
SpectralField random_complex_field(int trunc, std::uint64_t seed, double h1_norm = 1.0);

/// Real field supported on +-n with helical amplitude c at n and conj(c) at -n.
SpectralField helical_mode_field(int trunc, const FreqVec& n, Helicity h, cplx c);

}  // namespace rotres
