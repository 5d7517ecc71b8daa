// Exact integer arithmetic on Fourier lattice modes.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace rotres {

using wide_int = __int128;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation undefined at the given mode (typically n = 0).
struct InvalidMode : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LatticeOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// Largest admissible |n_i| for lattice arithmetic in 64-bit integers.
inline constexpr std::int64_t kMaxComponent = std::int64_t{1} << 20;

/// Integer Fourier mode index on Z^3.
struct FreqVec {
  std::int64_t n1 = 0, n2 = 0, n3 = 0;

  constexpr std::int64_t operator[](int i) const { return i == 0 ? n1 : (i == 1 ? n2 : n3); }
  constexpr bool is_zero() const { return n1 == 0 && n2 == 0 && n3 == 0; }
  constexpr FreqVec operator+(const FreqVec& o) const { return {n1 + o.n1, n2 + o.n2, n3 + o.n3}; }
  constexpr FreqVec operator-(const FreqVec& o) const { return {n1 - o.n1, n2 - o.n2, n3 - o.n3}; }
  constexpr FreqVec operator-() const { return {-n1, -n2, -n3}; }
  constexpr FreqVec scaled(std::int64_t s) const { return {s * n1, s * n2, s * n3}; }
  constexpr auto operator<=>(const FreqVec&) const = default;
};

std::string to_string(const FreqVec& n);

/// Throws LatticeOverflow when any component exceeds kMaxComponent.
void check_bounds(const FreqVec& n);

/// n1^2 + n2^2 + n3^2, exact.
std::int64_t norm_sq(const FreqVec& n);

constexpr std::int64_t linf(const FreqVec& n) {
  auto a = [](std::int64_t x) { return x < 0 ? -x : x; };
  std::int64_t m = a(n.n1);
  if (a(n.n2) > m) m = a(n.n2);
  if (a(n.n3) > m) m = a(n.n3);
  return m;
}

/// q = nu^2 * d with d square-free.
struct SquareFreeDecomp {
  std::int64_t nu = 1;
  std::int64_t d = 1;
  bool operator==(const SquareFreeDecomp&) const = default;
};

SquareFreeDecomp square_free_decompose(std::int64_t q);

struct BigSquareFreeDecomp {
  mpz_class nu{1};
  mpz_class d{1};
};

/// Big-integer variant. Trial division by small primes; the cofactor left over
/// must be 1, a perfect square, or a prime below the trial bound squared.
BigSquareFreeDecomp square_free_decompose(const mpz_class& q);

bool is_square_free(std::int64_t d);

std::int64_t divisor_count(std::int64_t N);

/// Number of (x, y) in Z^2 with b1 x^2 + b2 y^2 = N.
std::int64_t two_square_count(std::int64_t N, std::int64_t b1 = 1, std::int64_t b2 = 1);

/// Exact floor(sqrt(q)) for q >= 0.
std::int64_t isqrt(std::int64_t q);

}  // namespace rotres
