// An infinite family of nontrivial resonant triads on the regular torus,
// generated by a_0 = 0, a_1 = 1, a_{j+2} + 4 a_{j+1} + a_j = 0.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "rotres/resonance.hpp"

namespace rotres {

/// a_0 .. a_J. Throws InvalidInput for J < 1.
std::vector<mpz_class> pell_sequence(int J);

struct PellTriadRecord {
  int j = 0;
  mpz_class a_j, a_j1;
  BigFreqVec k, m, n;
  // {k1^2/k3^2, m1^2/m3^2, n1^2/n3^2} and {k2^2/k3^2, ...}, sorted, duplicates removed.
  std::vector<mpq_class> invariants1, invariants2;
  SignTriple sigma;       // smallest certifying sign triple found by the exact test
  mpz_class certificate;  // certificate value for sigma
};

/// k = (a_j, 1, a_{j+1}), m = (a_{j+1}, -1, a_j), n = k + m. Requires j >= 1.
PellTriadRecord pell_triad(int j);

/// Individual exact checks on one record.
struct PellChecks {
  bool pell0 = false;           // x^2 + 4xy + y^2 = 1 for (x, y) = (a_j, a_{j+1})
  bool pell = false;            // X^2 - 3y^2 = 1 for X = x + 2y
  bool growth = false;          // |a_{j+1}| >= 3|a_j| + 1
  bool certified = false;       // exact certificate 0
  bool polynomial_zero = false; // P(k, m, n; 1, 1) = 0
  bool discriminant_nonzero = false;
  bool all() const { return pell0 && pell && growth && certified && polynomial_zero && discriminant_nonzero; }
};

PellChecks check_pell_record(const PellTriadRecord& r);

/// (k3 m2 - k2 m3)(k1 m3 - k3 m1)(k1 m2 - k2 m1).
mpz_class irreducibility_discriminant(const BigFreqVec& k, const BigFreqVec& m);
mpz_class irreducibility_discriminant(const FreqVec& k, const FreqVec& m);

/// True iff both invariant sets differ between every pair of records.
bool curve_invariants_distinct(const std::vector<PellTriadRecord>& records);

void write_pell_csv(std::ostream& os, const std::vector<PellTriadRecord>& records);

}  // namespace rotres
