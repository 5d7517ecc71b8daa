// Alias-free pseudo-spectral products on the padded physical grid (FFTW).
#pragma once

#include <vector>

#include "rotres/field.hpp"

namespace rotres {

/// Smallest 2,3,5-smooth M with M >= 3N + 1. Products of two fields on
/// |n|_inf <= N evaluated on an M-point grid have no aliasing into that box.
int padded_size(int trunc);

/// F[(a . grad) b] on the truncation box, mean mode included, no projection.
SpectralField advective_product(const SpectralField& a, const SpectralField& b);

/// F[u1 d1 s + u2 d2 s] on the plane box.
PlaneField advect_scalar_2d(const PlaneField& u1, const PlaneField& u2, const PlaneField& s);

/// Physical values of component j on the uniform M^3 grid, x = 2 pi (i1, i2, i3) / M.
std::vector<cplx> to_grid(const SpectralField& f, int component, int M);

}  // namespace rotres
