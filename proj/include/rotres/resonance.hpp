// Resonant triads of the rotating-frame phase
//   omega^sigma_{nkm} = s1 k3/|k| + s2 m3/|m| - s3 n3/|n|
// on the regular torus: exact membership tests, enumeration, counting and
// small-divisor audits.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rotres/lattice.hpp"

namespace rotres {

struct InvalidTriad : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalIdentityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// (s1, s2, s3) in {+1,-1}^3. Ordered lexicographically with + before -.
struct SignTriple {
  std::int8_t s1 = 1, s2 = 1, s3 = 1;

  /// 0 for (+,+,+) up to 7 for (-,-,-); bit 2 is s1.
  constexpr int index() const { return (s1 < 0 ? 4 : 0) | (s2 < 0 ? 2 : 0) | (s3 < 0 ? 1 : 0); }
  static constexpr SignTriple from_index(int i) {
    return {static_cast<std::int8_t>(i & 4 ? -1 : 1), static_cast<std::int8_t>(i & 2 ? -1 : 1),
            static_cast<std::int8_t>(i & 1 ? -1 : 1)};
  }
  constexpr SignTriple flipped() const {
    return {static_cast<std::int8_t>(-s1), static_cast<std::int8_t>(-s2), static_cast<std::int8_t>(-s3)};
  }
  constexpr bool operator==(const SignTriple& o) const { return index() == o.index(); }
  constexpr auto operator<=>(const SignTriple& o) const { return index() <=> o.index(); }
};

/// Floating evaluation of omega^sigma_{nkm}. Throws InvalidMode on a zero mode.
double omega(const FreqVec& n, const FreqVec& k, const FreqVec& m, SignTriple sigma);

/// Exact resonance decision. The participating terms are those with a nonzero
/// third component; when their square-free parts agree the phase vanishes iff
///   value = s1 k3 mu nu + s2 m3 kappa nu - s3 n3 kappa mu
/// vanishes, with |n| = nu sqrt(d_n), |k| = kappa sqrt(d_k), |m| = mu sqrt(d_m).
/// Differing square-free parts among participating terms rule resonance out.
struct ResonanceCertificate {
  bool resonant = false;
  bool same_class = false;
  wide_int value = 0;
  SquareFreeDecomp dn, dk, dm;
};

ResonanceCertificate omega_is_zero_exact(const FreqVec& n, const FreqVec& k, const FreqVec& m, SignTriple sigma);

/// Bit i set iff SignTriple::from_index(i) certifies resonance.
std::uint8_t resonance_mask(const FreqVec& n, const FreqVec& k, const FreqVec& m);

/// All certifying sign triples when k3 m3 n3 != 0; empty otherwise.
/// Throws InvalidTriad when k + m != n.
std::vector<SignTriple> in_nontrivial_resonant_set(const FreqVec& n, const FreqVec& k, const FreqVec& m);

using BigFreqVec = std::array<mpz_class, 3>;

struct BigResonanceCertificate {
  bool resonant = false;
  bool same_class = false;
  mpz_class value;
};

/// Same decision as omega_is_zero_exact for modes beyond the 64-bit bound.
BigResonanceCertificate omega_is_zero_exact(const BigFreqVec& n, const BigFreqVec& k, const BigFreqVec& m,
                                            SignTriple sigma);

// ---------------------------------------------------------------------------
// Enumeration

enum class EnumerationMode { nontrivial_only, all_omega_zero };

/// Euclidean ball |k|, |m| <= L (counting lemma convention) or the solver's
/// cube max|k_i|, max|m_i|, max|n_i| <= L.
enum class TruncationNorm { euclidean, cube };

struct Triad {
  FreqVec n, k, m;
  SignTriple sigma;            // canonical: smallest certifying index
  std::uint8_t sigma_mask = 0; // all certifying sign triples
  wide_int certificate = 0;    // certificate value for the canonical sigma
};

struct ResonantSet {
  std::int64_t L = 0;
  EnumerationMode mode = EnumerationMode::nontrivial_only;
  TruncationNorm norm = TruncationNorm::euclidean;
  std::vector<Triad> triads;  // sorted by (n, k)

  struct Group {
    FreqVec n;
    std::size_t begin, end;
  };
  std::vector<Group> groups() const;
  std::size_t sigma_count() const;
};

/// Sharded by k3 across OpenMP threads; output is identical for any shard count.
/// shards = 0 uses the OpenMP default.
ResonantSet enumerate_resonant_triads(std::int64_t L, EnumerationMode mode,
                                      TruncationNorm norm = TruncationNorm::euclidean, int shards = 0);

/// Plain double loop over all (k, m) pairs; reference for the parallel kernel.
ResonantSet enumerate_resonant_triads_serial(std::int64_t L, EnumerationMode mode,
                                             TruncationNorm norm = TruncationNorm::euclidean);

void write_triads_csv(std::ostream& os, const ResonantSet& set);

// ---------------------------------------------------------------------------
// Counting census over nontrivial triads with |k|, |m| <= L.

struct CensusRow {
  std::int64_t L = 0;
  std::int64_t sup_count = 0;
  FreqVec argmax_n;
  std::int64_t total = 0;
  std::optional<double> slope;  // log-log slope of sup_count against the previous row
  std::int64_t max_count_bound() const { return 8 * (2 * L + 1) * (2 * L + 1); }
};

std::vector<CensusRow> counting_census(const std::vector<std::int64_t>& L_values, int shards = 0);

void write_census_csv(std::ostream& os, const std::vector<CensusRow>& rows);

// ---------------------------------------------------------------------------

/// P(k,m,n;th2,th3) = (k3^2|m|^2|n|^2 + m3^2|k|^2|n|^2 - n3^2|k|^2|m|^2)^2
///                    - 4 k3^2 m3^2 |k|^2 |m|^2 |n|^4,  |k|^2 = k1^2 + th2 k2^2 + th3 k3^2.
mpq_class resonance_polynomial(const FreqVec& k, const FreqVec& m, const FreqVec& n, const mpq_class& theta2,
                               const mpq_class& theta3);
mpq_class resonance_polynomial(const BigFreqVec& k, const BigFreqVec& m, const BigFreqVec& n,
                               const mpq_class& theta2, const mpq_class& theta3);

struct SmallDivisorAudit {
  std::int64_t N = 0;
  double min_abs_omega = 0.0;
  double bound = 0.0;  // 3^-3 2^-4 N^-12
  bool pass = false;
  FreqVec argmin_n, argmin_k;
  SignTriple argmin_sigma;
  std::int64_t nonresonant_count = 0;
};

/// Scans n, k != 0 with n != k, |k| <= N, |n-k| <= N and every sigma whose
/// phase is exactly nonzero.
SmallDivisorAudit min_omega_audit(std::int64_t N, int shards = 0);

/// prod_{s1,s2} omega^{(s1,s2,-)}_{nkm} * |k|^4 |m|^4 |n|^4, evaluated in
/// extended precision and rounded; throws NumericalIdentityError when the
/// product is not within 1e-6 of an integer.
wide_int omega_product_identity(const FreqVec& n, const FreqVec& k, const FreqVec& m);

struct ProductIdentityValue {
  wide_int nearest = 0;
  double residual = 0.0;  // distance of the scaled product to nearest
};

/// The same product without the integrality check.
ProductIdentityValue omega_product_value(const FreqVec& n, const FreqVec& k, const FreqVec& m);

std::string to_string(wide_int v);

}  // namespace rotres
