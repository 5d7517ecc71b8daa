#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "rotres/resonance.hpp"

using namespace rotres;

namespace {

const FreqVec kPellN{-3, 0, -3}, kPellK{1, 1, -4}, kPellM{-4, -1, 1};
const FreqVec kGenN{1, 1, 2}, kGenK{1, 0, 1}, kGenM{0, 1, 1};
constexpr SignTriple kPlus{1, 1, 1};

using oracle::Key;
using oracle::brute_force;
using oracle::oracle_zero;

std::set<Key> as_keys(const ResonantSet& R) {
  std::set<Key> out;
  for (const auto& t : R.triads) out.insert({t.n, t.k, t.sigma_mask});
  return out;
}

bool same_triads(const ResonantSet& a, const ResonantSet& b) {
  if (a.triads.size() != b.triads.size()) return false;
  for (std::size_t i = 0; i < a.triads.size(); ++i) {
    const auto &x = a.triads[i], &y = b.triads[i];
    if (x.n != y.n || x.k != y.k || x.m != y.m || x.sigma_mask != y.sigma_mask || x.sigma != y.sigma ||
        x.certificate != y.certificate)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("SignTriple indexing") {
  CHECK(kPlus.index() == 0);
  CHECK(SignTriple{-1, -1, -1}.index() == 7);
  for (int i = 0; i < 8; ++i) {
    CHECK(SignTriple::from_index(i).index() == i);
    CHECK(SignTriple::from_index(i).flipped().index() == 7 - i);
  }
}

TEST_CASE("omega examples") {
  CHECK(std::abs(omega(kPellN, kPellK, kPellM, kPlus)) <= 1e-15);
  CHECK(std::abs(omega({2, 0, 0}, {1, 1, 1}, {1, -1, -1}, kPlus)) <= 1e-15);
  const double expect = 1 / std::sqrt(2.0) + 1 / std::sqrt(2.0) - 2 / std::sqrt(6.0);
  CHECK(omega(kGenN, kGenK, kGenM, kPlus) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(omega(kGenN, kGenK, kGenM, kPlus) == doctest::Approx(0.59775).epsilon(1e-4));
  CHECK_THROWS_AS(omega({0, 0, 0}, kGenK, kGenM, kPlus), InvalidMode);
}

TEST_CASE("omega_is_zero_exact examples") {
  const auto c = omega_is_zero_exact(kPellN, kPellK, kPellM, kPlus);
  CHECK(c.resonant);
  CHECK(c.value == 0);
  CHECK(c.dn == SquareFreeDecomp{3, 2});
  CHECK(c.dk == SquareFreeDecomp{3, 2});
  CHECK(c.dm == SquareFreeDecomp{3, 2});

  const auto g = omega_is_zero_exact(kGenN, kGenK, kGenM, kPlus);
  CHECK_FALSE(g.resonant);
  CHECK_FALSE(g.same_class);
  CHECK(g.dk.d == 2);
  CHECK(g.dn.d == 6);
  CHECK_THROWS_AS(omega_is_zero_exact({0, 0, 0}, kGenK, kGenM, kPlus), InvalidMode);
}

TEST_CASE("global sign flip preserves the decision") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 2000; ++t) {
    const FreqVec k{d(rng), d(rng), d(rng)}, m{d(rng), d(rng), d(rng)};
    const FreqVec n = k + m;
    if (k.is_zero() || m.is_zero() || n.is_zero()) continue;
    for (int i = 0; i < 8; ++i) {
      const auto s = SignTriple::from_index(i);
      CHECK(omega_is_zero_exact(n, k, m, s).resonant == omega_is_zero_exact(n, k, m, s.flipped()).resonant);
      CHECK(omega_is_zero_exact(n, k, m, s).resonant == oracle_zero(n, k, m, s));
    }
  }
}

TEST_CASE("in_nontrivial_resonant_set examples") {
  const auto p = in_nontrivial_resonant_set(kPellN, kPellK, kPellM);
  CHECK(std::find(p.begin(), p.end(), kPlus) != p.end());
  CHECK(in_nontrivial_resonant_set({2, 0, 0}, {1, 1, 1}, {1, -1, -1}).empty());
  CHECK(in_nontrivial_resonant_set(kGenN, kGenK, kGenM).empty());
  CHECK_THROWS_AS(in_nontrivial_resonant_set({1, 1, 1}, kGenK, kGenM), InvalidTriad);
}

TEST_CASE("big certificate agrees with the 64-bit one") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 500; ++t) {
    const FreqVec k{d(rng), d(rng), d(rng)}, m{d(rng), d(rng), d(rng)};
    const FreqVec n = k + m;
    if (k.is_zero() || m.is_zero() || n.is_zero()) continue;
    const auto big = [](const FreqVec& v) {
      return BigFreqVec{mpz_class(static_cast<long>(v.n1)), mpz_class(static_cast<long>(v.n2)),
                        mpz_class(static_cast<long>(v.n3))};
    };
    for (int i = 0; i < 8; ++i) {
      const auto s = SignTriple::from_index(i);
      const auto a = omega_is_zero_exact(n, k, m, s);
      const auto b = omega_is_zero_exact(big(n), big(k), big(m), s);
      CHECK(a.resonant == b.resonant);
      CHECK(a.same_class == b.same_class);
    }
  }
}

TEST_CASE("enumeration at L = 1 is tiny and certified") {
  const auto R = enumerate_resonant_triads(1, EnumerationMode::nontrivial_only);
  for (const auto& t : R.triads) {
    CHECK(t.k.n3 * t.m.n3 * t.n.n3 != 0);
    CHECK(t.certificate == 0);
    CHECK(t.k + t.m == t.n);
  }
  CHECK(as_keys(R) == brute_force(1, EnumerationMode::nontrivial_only, TruncationNorm::euclidean));
}

TEST_CASE("enumeration matches the brute-force oracle") {
  for (std::int64_t L = 1; L <= 4; ++L) {
    CAPTURE(L);
    for (auto mode : {EnumerationMode::nontrivial_only, EnumerationMode::all_omega_zero}) {
      CHECK(as_keys(enumerate_resonant_triads(L, mode)) == brute_force(L, mode, TruncationNorm::euclidean));
      CHECK(as_keys(enumerate_resonant_triads(L, mode, TruncationNorm::cube)) ==
            brute_force(L, mode, TruncationNorm::cube));
    }
  }
}

TEST_CASE("certified triads satisfy the square-free class condition") {
  const auto R = enumerate_resonant_triads(6, EnumerationMode::nontrivial_only);
  CHECK(!R.triads.empty());
  for (const auto& t : R.triads) {
    const auto c = omega_is_zero_exact(t.n, t.k, t.m, t.sigma);
    CHECK(c.resonant);
    CHECK(c.dn.d == c.dk.d);
    CHECK(c.dk.d == c.dm.d);
    CHECK(t.sigma.index() == __builtin_ctz(t.sigma_mask));
  }
}

TEST_CASE("all-omega-zero includes the symmetric cancellation example") {
  const auto R = enumerate_resonant_triads(2, EnumerationMode::all_omega_zero);
  bool found = false;
  for (const auto& t : R.triads) {
    if (t.n == FreqVec{2, 0, 0} && t.k == FreqVec{1, 1, 1}) found = (t.sigma_mask & 1) != 0;
  }
  CHECK(found);
}

TEST_CASE("resonant set is closed under reflection and leg exchange") {
  for (auto mode : {EnumerationMode::nontrivial_only, EnumerationMode::all_omega_zero}) {
    const auto keys = as_keys(enumerate_resonant_triads(5, mode));
    for (const auto& [n, k, mask] : keys) {
      const FreqVec m = n - k;
      const auto refl = [](const FreqVec& v) { return FreqVec{-v.n1, v.n2, v.n3}; };
      CHECK(keys.count({refl(n), refl(k), mask}) == 1);
      // Swapping k and m swaps s1 and s2.
      int swapped = 0;
      for (int i = 0; i < 8; ++i) {
        if (!(mask & (1 << i))) continue;
        const auto s = SignTriple::from_index(i);
        swapped |= 1 << SignTriple{s.s2, s.s1, s.s3}.index();
      }
      CHECK(keys.count({n, m, swapped}) == 1);
    }
  }
}

TEST_CASE("parallel enumeration is independent of the shard count") {
  for (auto norm : {TruncationNorm::euclidean, TruncationNorm::cube}) {
    for (auto mode : {EnumerationMode::nontrivial_only, EnumerationMode::all_omega_zero}) {
      const auto ref = enumerate_resonant_triads_serial(5, mode, norm);
      for (int shards : {1, 2, 3, 7}) CHECK(same_triads(enumerate_resonant_triads(5, mode, norm, shards), ref));
    }
  }
}

TEST_CASE("enumeration bounds") {
  CHECK_THROWS_AS(enumerate_resonant_triads(0, EnumerationMode::nontrivial_only), InvalidInput);
  CHECK_THROWS_AS(enumerate_resonant_triads(5000, EnumerationMode::nontrivial_only), LatticeOverflow);
}

TEST_CASE("triads csv lists every certifying sign triple") {
  const auto R = enumerate_resonant_triads(3, EnumerationMode::nontrivial_only);
  std::ostringstream os;
  write_triads_csv(os, R);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "n1,n2,n3,k1,k2,k3,m1,m2,m3,s1,s2,s3,certificate");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "0");
  }
  CHECK(rows == R.sigma_count());
}

TEST_CASE("counting census") {
  const auto rows = counting_census({1, 2, 4, 6});
  REQUIRE(rows.size() == 4);
  CHECK_FALSE(rows[0].slope.has_value());
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].slope.has_value() == (rows[i].sup_count > 0 && rows[i - 1].sup_count > 0));
  CHECK(rows.back().slope.has_value());
  for (const auto& r : rows) CHECK(r.sup_count <= r.max_count_bound());

  // Oracle: per-n counts from the brute-force set.
  for (const auto& r : rows) {
    std::map<FreqVec, std::int64_t> counts;
    std::int64_t total = 0;
    for (const auto& [n, k, mask] : brute_force(r.L, EnumerationMode::nontrivial_only, TruncationNorm::euclidean)) {
      ++counts[n];
      ++total;
    }
    std::int64_t sup = 0;
    for (const auto& [n, c] : counts) sup = std::max(sup, c);
    CHECK(r.sup_count == sup);
    CHECK(r.total == total);
    if (sup > 0) CHECK(counts[r.argmax_n] == sup);
  }
  CHECK_THROWS_AS(counting_census({4, 2}), InvalidInput);

  std::ostringstream os;
  write_census_csv(os, rows);
  CHECK(os.str().rfind("L,", 0) == 0);
}

TEST_CASE("census is empty below the smallest nontrivial triad") {
  const auto R = enumerate_resonant_triads(6, EnumerationMode::nontrivial_only);
  double smallest = 1e9;
  for (const auto& t : R.triads)
    smallest = std::min(smallest, std::sqrt(double(std::max(norm_sq(t.k), norm_sq(t.m)))));
  const auto L = static_cast<std::int64_t>(std::ceil(smallest)) - 1;
  if (L >= 1) {
    const auto rows = counting_census({L});
    CHECK(rows[0].sup_count == 0);
  }
}

TEST_CASE("resonance_polynomial") {
  CHECK(resonance_polynomial(kPellK, kPellM, kPellN, 1, 1) == 0);
  const auto p = resonance_polynomial(kGenK, kGenM, kGenN, 1, 1);
  CHECK(p == -512);
  // Homogeneous of degree 12 in (k, m, n).
  CHECK(resonance_polynomial(kGenK.scaled(2), kGenM.scaled(2), kGenN.scaled(2), 1, 1) == 4096 * p);
  CHECK(resonance_polynomial(kGenK.scaled(3), kGenM.scaled(3), kGenN.scaled(3), mpq_class(1, 2), 3) ==
        531441 * resonance_polynomial(kGenK, kGenM, kGenN, mpq_class(1, 2), 3));
}

TEST_CASE("product identity equals P and vanishes exactly on resonance") {
  CHECK(omega_product_identity(kPellN, kPellK, kPellM) == 0);
  CHECK(omega_product_identity(kGenN, kGenK, kGenM) == -512);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-3, 3);
  int resonant = 0;
  for (int t = 0; t < 3000; ++t) {
    const FreqVec k{d(rng), d(rng), d(rng)}, m{d(rng), d(rng), d(rng)};
    const FreqVec n = k + m;
    if (k.is_zero() || m.is_zero() || n.is_zero()) continue;
    const wide_int v = omega_product_identity(n, k, m);
    CHECK(mpq_class(to_string(v)) == resonance_polynomial(k, m, n, 1, 1));
    const bool any = resonance_mask(n, k, m) != 0;
    CHECK(any == (v == 0));
    resonant += any;
  }
  CHECK(resonant > 0);
}

TEST_CASE("min_omega_audit at N = 4") {
  const auto a = min_omega_audit(4);
  CHECK(a.pass);
  CHECK(a.min_abs_omega > 0.0);
  CHECK(a.min_abs_omega >= a.bound);
  CHECK(a.bound == doctest::Approx(1.0 / (27.0 * 16.0 * std::pow(4.0, 12))));
  CHECK(std::abs(omega(a.argmin_n, a.argmin_k, a.argmin_n - a.argmin_k, a.argmin_sigma)) ==
        doctest::Approx(a.min_abs_omega));
  CHECK(a.nonresonant_count > 0);
}

TEST_CASE("to_string for 128-bit integers") {
  CHECK(to_string(wide_int(0)) == "0");
  CHECK(to_string(wide_int(-512)) == "-512");
  const wide_int big = wide_int(1) << 100;
  CHECK(to_string(big) == "1267650600228229401496703205376");
}
