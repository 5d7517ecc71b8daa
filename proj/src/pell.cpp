#include "rotres/pell.hpp"

#include <algorithm>
#include <ostream>

namespace rotres {

std::vector<mpz_class> pell_sequence(int J) {
  if (J < 1) throw InvalidInput("pell_sequence requires J >= 1");
  std::vector<mpz_class> a(static_cast<std::size_t>(J) + 1);
  a[0] = 0;
  a[1] = 1;
  for (std::size_t j = 2; j < a.size(); ++j) a[j] = -4 * a[j - 1] - a[j - 2];
  return a;
}

namespace {

std::vector<mpq_class> invariant_set(const BigFreqVec& k, const BigFreqVec& m, const BigFreqVec& n, int comp) {
  std::vector<mpq_class> s;
  for (const auto* v : {&k, &m, &n}) {
    mpq_class q(mpz_class((*v)[comp] * (*v)[comp]), mpz_class((*v)[2] * (*v)[2]));
    q.canonicalize();
    s.push_back(q);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

PellTriadRecord pell_triad(int j) {
  if (j < 1) throw InvalidInput("pell_triad requires j >= 1 (j = 0 gives m3 = 0)");
  const auto a = pell_sequence(j + 1);
  PellTriadRecord r;
  r.j = j;
  r.a_j = a[static_cast<std::size_t>(j)];
  r.a_j1 = a[static_cast<std::size_t>(j) + 1];
  r.k = {r.a_j, mpz_class(1), r.a_j1};
  r.m = {r.a_j1, mpz_class(-1), r.a_j};
  r.n = {mpz_class(r.a_j + r.a_j1), mpz_class(0), mpz_class(r.a_j + r.a_j1)};
  r.invariants1 = invariant_set(r.k, r.m, r.n, 0);
  r.invariants2 = invariant_set(r.k, r.m, r.n, 1);
  bool found = false;
  for (int i = 0; i < 8 && !found; ++i) {
    const SignTriple s = SignTriple::from_index(i);
    const auto c = omega_is_zero_exact(r.n, r.k, r.m, s);
    if (c.resonant) {
      r.sigma = s;
      r.certificate = c.value;
      found = true;
    }
  }
  if (!found) {
    r.sigma = SignTriple{};
    r.certificate = omega_is_zero_exact(r.n, r.k, r.m, r.sigma).value;
  }
  return r;
}

PellChecks check_pell_record(const PellTriadRecord& r) {
  PellChecks c;
  const mpz_class& x = r.a_j;
  const mpz_class& y = r.a_j1;
  c.pell0 = x * x + 4 * x * y + y * y == 1;
  const mpz_class X = x + 2 * y;
  c.pell = X * X - 3 * y * y == 1;
  c.growth = abs(y) >= 3 * abs(x) + 1;
  const auto cert = omega_is_zero_exact(r.n, r.k, r.m, r.sigma);
  c.certified = cert.resonant && cert.value == 0 && r.certificate == 0;
  c.polynomial_zero = resonance_polynomial(r.k, r.m, r.n, 1, 1) == 0;
  c.discriminant_nonzero = irreducibility_discriminant(r.k, r.m) != 0;
  return c;
}

mpz_class irreducibility_discriminant(const BigFreqVec& k, const BigFreqVec& m) {
  return mpz_class((k[2] * m[1] - k[1] * m[2]) * (k[0] * m[2] - k[2] * m[0]) * (k[0] * m[1] - k[1] * m[0]));
}

mpz_class irreducibility_discriminant(const FreqVec& k, const FreqVec& m) {
  const BigFreqVec bk{mpz_class(k.n1), mpz_class(k.n2), mpz_class(k.n3)};
  const BigFreqVec bm{mpz_class(m.n1), mpz_class(m.n2), mpz_class(m.n3)};
  return irreducibility_discriminant(bk, bm);
}

bool curve_invariants_distinct(const std::vector<PellTriadRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (records[i].invariants1 == records[j].invariants1) return false;
      if (records[i].invariants2 == records[j].invariants2) return false;
    }
  }
  return true;
}

void write_pell_csv(std::ostream& os, const std::vector<PellTriadRecord>& records) {
  os << "j,a_j,a_j1,k1,k2,k3,m1,m2,m3,n1,n2,n3,s1,s2,s3,certificate,discriminant\n";
  for (const auto& r : records) {
    os << r.j << ',' << r.a_j << ',' << r.a_j1;
    for (const auto* v : {&r.k, &r.m, &r.n}) {
      for (const auto& c : *v) os << ',' << c;
    }
    os << ',' << int(r.sigma.s1) << ',' << int(r.sigma.s2) << ',' << int(r.sigma.s3) << ',' << r.certificate << ','
       << irreducibility_discriminant(r.k, r.m) << '\n';
  }
}

}  // namespace rotres
