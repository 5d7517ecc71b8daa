#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rotres/pell.hpp"

using namespace rotres;

namespace {

BigFreqVec big(std::int64_t a, std::int64_t b, std::int64_t c) {
  return {mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)), mpz_class(static_cast<long>(c))};
}

}  // namespace

TEST_CASE("pell_sequence") {
  const auto a = pell_sequence(5);
  const std::vector<long> expect = {0, 1, -4, 15, -56, 209};
  REQUIRE(a.size() == expect.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == expect[i]);
  CHECK_THROWS_AS(pell_sequence(0), InvalidInput);

  // Past 64 bits the recurrence still holds exactly.
  const auto b = pell_sequence(60);
  for (std::size_t j = 0; j + 2 < b.size(); ++j) CHECK(b[j + 2] + 4 * b[j + 1] + b[j] == 0);
  CHECK(abs(b[60]) > mpz_class("9223372036854775807"));
}

TEST_CASE("pell_triad j = 1") {
  const auto r = pell_triad(1);
  CHECK(r.k == big(1, 1, -4));
  CHECK(r.m == big(-4, -1, 1));
  CHECK(r.n == big(-3, 0, -3));
  CHECK(r.certificate == 0);
  const auto c = check_pell_record(r);
  CHECK(c.pell0);
  CHECK(c.pell);
  CHECK(c.certified);
  CHECK(c.polynomial_zero);
  CHECK(c.discriminant_nonzero);
  CHECK(c.all());
  // X = x + 2y = -7, X^2 - 3y^2 = 1.
  const mpz_class X = r.a_j + 2 * r.a_j1;
  CHECK(X == -7);
  CHECK(X * X - 3 * r.a_j1 * r.a_j1 == 1);
  CHECK_THROWS_AS(pell_triad(0), InvalidInput);
}

TEST_CASE("pell_triad j = 2") {
  const auto r = pell_triad(2);
  CHECK(r.k == big(-4, 1, 15));
  CHECK(r.m == big(15, -1, -4));
  CHECK(r.n == big(11, 0, 11));
  CHECK(check_pell_record(r).all());
}

TEST_CASE("irreducibility discriminant") {
  CHECK(irreducibility_discriminant(pell_triad(1).k, pell_triad(1).m) == -135);
  CHECK(irreducibility_discriminant(pell_triad(2).k, pell_triad(2).m) == -25289);
  CHECK(irreducibility_discriminant(FreqVec{1, 2, 3}, FreqVec{2, 4, 6}) == 0);
  // Closed form (a_j + a_{j+1})^3 (a_j - a_{j+1}).
  for (int j = 1; j <= 20; ++j) {
    const auto r = pell_triad(j);
    const mpz_class s = r.a_j + r.a_j1, d = r.a_j - r.a_j1;
    CHECK(irreducibility_discriminant(r.k, r.m) == s * s * s * d);
  }
}

TEST_CASE("curve invariants") {
  const auto r = pell_triad(1);
  // {k2^2/k3^2, m2^2/m3^2, n2^2/n3^2} = {1/16, 1, 0}.
  const std::vector<mpq_class> expect = {0, mpq_class(1, 16), 1};
  CHECK(r.invariants2 == expect);

  std::vector<PellTriadRecord> recs;
  for (int j = 1; j <= 10; ++j) recs.push_back(pell_triad(j));
  CHECK(curve_invariants_distinct(recs));
  recs.push_back(pell_triad(4));
  CHECK_FALSE(curve_invariants_distinct(recs));
}

TEST_CASE("j = 1..20 all certify exactly") {
  std::vector<PellTriadRecord> recs;
  for (int j = 1; j <= 20; ++j) {
    CAPTURE(j);
    const auto r = pell_triad(j);
    const auto c = check_pell_record(r);
    CHECK(c.all());
    CHECK(c.growth);
    CHECK((r.sigma == SignTriple{1, 1, 1} || r.sigma == SignTriple{-1, -1, -1}));
    const auto cert = omega_is_zero_exact(r.n, r.k, r.m, r.sigma);
    CHECK(cert.resonant);
    CHECK(cert.value == 0);
    CHECK(resonance_polynomial(r.k, r.m, r.n, 1, 1) == 0);
    recs.push_back(r);
  }
  CHECK(curve_invariants_distinct(recs));
  for (std::size_t i = 0; i < recs.size(); ++i)
    for (std::size_t j = i + 1; j < recs.size(); ++j) CHECK(abs(recs[i].a_j) != abs(recs[j].a_j));
}

TEST_CASE("pell csv") {
  std::vector<PellTriadRecord> recs = {pell_triad(1), pell_triad(2)};
  std::ostringstream os;
  write_pell_csv(os, recs);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  CHECK(header == "j,a_j,a_j1,k1,k2,k3,m1,m2,m3,n1,n2,n3,s1,s2,s3,certificate,discriminant");
  std::getline(is, row);
  CHECK(row.rfind("1,1,-4,1,1,-4,-4,-1,1,-3,0,-3,", 0) == 0);
  CHECK(row.substr(row.size() - 7) == ",0,-135");
}
