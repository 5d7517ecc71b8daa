#include "rotres/lattice.hpp"

#include <cmath>

namespace rotres {

std::string to_string(const FreqVec& n) {
  return "(" + std::to_string(n.n1) + "," + std::to_string(n.n2) + "," + std::to_string(n.n3) + ")";
}

void check_bounds(const FreqVec& n) {
  if (linf(n) > kMaxComponent) {
    throw LatticeOverflow("lattice mode " + to_string(n) + " exceeds |n|_inf <= 2^20");
  }
}

std::int64_t norm_sq(const FreqVec& n) {
  check_bounds(n);
  return n.n1 * n.n1 + n.n2 * n.n2 + n.n3 * n.n3;
}

std::int64_t isqrt(std::int64_t q) {
  if (q < 0) throw InvalidInput("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
  while (r > 0 && r * r > q) --r;
  while ((r + 1) * (r + 1) <= q) ++r;
  return r;
}

SquareFreeDecomp square_free_decompose(std::int64_t q) {
  if (q <= 0) throw InvalidInput("square_free_decompose requires q >= 1");
  SquareFreeDecomp out;
  std::int64_t rest = q;
  auto take = [&](std::int64_t p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) out.nu *= p;
    if (e % 2) out.d *= p;
  };
  take(2);
  for (std::int64_t p = 3; p * p <= rest; p += 2) take(p);
  if (rest > 1) out.d *= rest;
  return out;
}

BigSquareFreeDecomp square_free_decompose(const mpz_class& q) {
  if (q <= 0) throw InvalidInput("square_free_decompose requires q >= 1");
  constexpr unsigned long kTrialBound = 1u << 20;
  BigSquareFreeDecomp out;
  mpz_class rest = q;
  for (unsigned long p = 2; p <= kTrialBound; p += (p == 2 ? 1 : 2)) {
    if (mpz_class(p) * p > rest) break;
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) out.nu *= p;
    if (e % 2) out.d *= p;
  }
  if (rest == 1) return out;
  if (mpz_perfect_square_p(rest.get_mpz_t())) {
    out.nu *= sqrt(rest);
    return out;
  }
  if (rest < mpz_class(kTrialBound) * kTrialBound) {
    // All factors below the trial bound are gone, so rest is prime.
    out.d *= rest;
    return out;
  }
  throw InvalidInput("square_free_decompose: cofactor " + rest.get_str() + " cannot be classified");
}

bool is_square_free(std::int64_t d) {
  if (d <= 0) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

std::int64_t divisor_count(std::int64_t N) {
  if (N <= 0) throw InvalidInput("divisor_count requires N >= 1");
  std::int64_t count = 1;
  std::int64_t rest = N;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    count *= (e + 1);
  }
  if (rest > 1) count *= 2;
  return count;
}

std::int64_t two_square_count(std::int64_t N, std::int64_t b1, std::int64_t b2) {
  if (N <= 0) throw InvalidInput("two_square_count requires N >= 1");
  if (b1 <= 0 || b2 <= 0) throw InvalidInput("two_square_count requires positive weights");
  std::int64_t count = 0;
  const std::int64_t xmax = isqrt(N / b1);
  for (std::int64_t x = -xmax; x <= xmax; ++x) {
    const std::int64_t rem = N - b1 * x * x;
    if (rem < 0 || rem % b2 != 0) continue;
    const std::int64_t y2 = rem / b2;
    const std::int64_t y = isqrt(y2);
    if (y * y == y2) count += (y == 0 ? 1 : 2);
  }
  return count;
}

}  // namespace rotres
