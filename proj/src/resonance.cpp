#include "rotres/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include <omp.h>

namespace rotres {

std::string to_string(wide_int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Magnitudes here stay far below 2^127, so negation is safe.
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

void require_nonzero_modes(const FreqVec& n, const FreqVec& k, const FreqVec& m) {
  if (n.is_zero() || k.is_zero() || m.is_zero()) {
    throw InvalidMode("omega is undefined when one of n, k, m is the zero mode");
  }
}

/// Square-free decompositions of every q in [0, qmax], built by sieving squares.
class SquareFreeTable {
 public:
  explicit SquareFreeTable(std::int64_t qmax) : nu_(qmax + 1, 1), d_(qmax + 1) {
    for (std::int64_t q = 0; q <= qmax; ++q) d_[q] = q;
    for (std::int64_t p = 2; p * p <= qmax; ++p) {
      const std::int64_t p2 = p * p;
      for (std::int64_t q = p2; q <= qmax; q += p2) {
        while (d_[q] % p2 == 0) {
          d_[q] /= p2;
          nu_[q] *= p;
        }
      }
    }
  }
  SquareFreeDecomp operator()(std::int64_t q) const { return {nu_[q], d_[q]}; }
  std::int64_t d(std::int64_t q) const { return d_[q]; }

 private:
  std::vector<std::int64_t> nu_, d_;
};

struct DirectDecomp {
  SquareFreeDecomp operator()(std::int64_t q) const { return square_free_decompose(q); }
};

struct PhaseTerms {
  bool same_class = false;
  wide_int A = 0, B = 0, C = 0;  // k3 mu nu, m3 kappa nu, n3 kappa mu
  SquareFreeDecomp dn, dk, dm;
};

template <class Decomp>
PhaseTerms phase_terms(const FreqVec& n, const FreqVec& k, const FreqVec& m, const Decomp& decomp) {
  PhaseTerms t;
  t.dn = decomp(n.n1 * n.n1 + n.n2 * n.n2 + n.n3 * n.n3);
  t.dk = decomp(k.n1 * k.n1 + k.n2 * k.n2 + k.n3 * k.n3);
  t.dm = decomp(m.n1 * m.n1 + m.n2 * m.n2 + m.n3 * m.n3);
  std::int64_t cls = 0;
  bool ok = true;
  const std::pair<std::int64_t, std::int64_t> parts[3] = {{k.n3, t.dk.d}, {m.n3, t.dm.d}, {n.n3, t.dn.d}};
  for (const auto& [x3, d] : parts) {
    if (x3 == 0) continue;
    if (cls == 0) {
      cls = d;
    } else if (cls != d) {
      ok = false;
    }
  }
  t.same_class = ok;
  t.A = wide_int(k.n3) * t.dm.nu * t.dn.nu;
  t.B = wide_int(m.n3) * t.dk.nu * t.dn.nu;
  t.C = wide_int(n.n3) * t.dk.nu * t.dm.nu;
  return t;
}

inline wide_int certificate_value(const PhaseTerms& t, SignTriple s) { return s.s1 * t.A + s.s2 * t.B - s.s3 * t.C; }

inline std::uint8_t mask_from_terms(const PhaseTerms& t) {
  if (!t.same_class) return 0;
  std::uint8_t mask = 0;
  for (int i = 0; i < 8; ++i) {
    if (certificate_value(t, SignTriple::from_index(i)) == 0) mask |= static_cast<std::uint8_t>(1u << i);
  }
  return mask;
}

/// Same as mask_from_terms(phase_terms(...)) with an early exit on class mismatch.
std::uint8_t fast_mask(const FreqVec& n, const FreqVec& k, const FreqVec& m, const SquareFreeTable& table) {
  const std::int64_t qn = n.n1 * n.n1 + n.n2 * n.n2 + n.n3 * n.n3;
  const std::int64_t qk = k.n1 * k.n1 + k.n2 * k.n2 + k.n3 * k.n3;
  const std::int64_t qm = m.n1 * m.n1 + m.n2 * m.n2 + m.n3 * m.n3;
  std::int64_t cls = 0;
  const std::int64_t x3[3] = {k.n3, m.n3, n.n3};
  const std::int64_t q[3] = {qk, qm, qn};
  for (int i = 0; i < 3; ++i) {
    if (x3[i] == 0) continue;
    const std::int64_t d = table.d(q[i]);
    if (cls == 0) {
      cls = d;
    } else if (cls != d) {
      return 0;
    }
  }
  return mask_from_terms(phase_terms(n, k, m, table));
}

int lowest_bit(std::uint8_t mask) {
  for (int i = 0; i < 8; ++i) {
    if (mask & (1u << i)) return i;
  }
  return -1;
}

Triad make_triad(const FreqVec& n, const FreqVec& k, const FreqVec& m, std::uint8_t mask, const SquareFreeTable& table) {
  Triad t;
  t.n = n;
  t.k = k;
  t.m = m;
  t.sigma_mask = mask;
  t.sigma = SignTriple::from_index(lowest_bit(mask));
  t.certificate = certificate_value(phase_terms(n, k, m, table), t.sigma);
  return t;
}

std::vector<FreqVec> region_points(std::int64_t L, TruncationNorm norm) {
  std::vector<FreqVec> pts;
  for (std::int64_t a = -L; a <= L; ++a) {
    for (std::int64_t b = -L; b <= L; ++b) {
      for (std::int64_t c = -L; c <= L; ++c) {
        const FreqVec p{a, b, c};
        if (p.is_zero()) continue;
        if (norm == TruncationNorm::euclidean && a * a + b * b + c * c > L * L) continue;
        pts.push_back(p);
      }
    }
  }
  return pts;
}

std::int64_t max_norm_sq(std::int64_t L, TruncationNorm norm) {
  return norm == TruncationNorm::euclidean ? 4 * L * L : 3 * (2 * L) * (2 * L);
}

void check_enumeration_bound(std::int64_t L) {
  if (L < 1) throw InvalidInput("enumeration requires L >= 1");
  // Keeps the square-free table and every lattice product well inside 64 bits.
  if (L > 4096) throw LatticeOverflow("enumeration bound L <= 4096 exceeded");
}

bool accept_pair(const FreqVec& n, std::int64_t L, EnumerationMode mode, TruncationNorm norm) {
  if (n.is_zero()) return false;
  if (norm == TruncationNorm::cube && linf(n) > L) return false;
  if (mode == EnumerationMode::nontrivial_only && n.n3 == 0) return false;
  return true;
}

void sort_triads(std::vector<Triad>& triads) {
  std::sort(triads.begin(), triads.end(), [](const Triad& a, const Triad& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.k < b.k;
  });
}

int thread_count(int shards) { return shards > 0 ? shards : omp_get_max_threads(); }

/// Points grouped by square-free class of |k|^2, restricted to k3 != 0.
std::unordered_map<std::int64_t, std::vector<FreqVec>> nontrivial_classes(const std::vector<FreqVec>& pts,
                                                                          const SquareFreeTable& table) {
  std::unordered_map<std::int64_t, std::vector<FreqVec>> classes;
  for (const auto& p : pts) {
    if (p.n3 == 0) continue;
    classes[table.d(p.n1 * p.n1 + p.n2 * p.n2 + p.n3 * p.n3)].push_back(p);
  }
  return classes;
}

/// Visits every accepted (n, k, m, mask != 0) with k3 == shard value.
template <class Visit>
void visit_shard(std::int64_t k3, const std::vector<FreqVec>& pts,
                 const std::unordered_map<std::int64_t, std::vector<FreqVec>>& classes, const SquareFreeTable& table,
                 std::int64_t L, EnumerationMode mode, TruncationNorm norm, Visit&& visit) {
  static const std::vector<FreqVec> kEmpty;
  for (const auto& k : pts) {
    if (k.n3 != k3) continue;
    const std::vector<FreqVec>* candidates = &pts;
    if (mode == EnumerationMode::nontrivial_only) {
      if (k.n3 == 0) continue;
      const auto it = classes.find(table.d(k.n1 * k.n1 + k.n2 * k.n2 + k.n3 * k.n3));
      candidates = it == classes.end() ? &kEmpty : &it->second;
    }
    for (const auto& m : *candidates) {
      const FreqVec n = k + m;
      if (!accept_pair(n, L, mode, norm)) continue;
      const std::uint8_t mask = fast_mask(n, k, m, table);
      if (mask) visit(n, k, m, mask);
    }
  }
}

}  // namespace

double omega(const FreqVec& n, const FreqVec& k, const FreqVec& m, SignTriple s) {
  require_nonzero_modes(n, k, m);
  const auto ratio = [](const FreqVec& v) { return static_cast<double>(v.n3) / std::sqrt(static_cast<double>(norm_sq(v))); };
  return s.s1 * ratio(k) + s.s2 * ratio(m) - s.s3 * ratio(n);
}

ResonanceCertificate omega_is_zero_exact(const FreqVec& n, const FreqVec& k, const FreqVec& m, SignTriple sigma) {
  require_nonzero_modes(n, k, m);
  check_bounds(n);
  check_bounds(k);
  check_bounds(m);
  const PhaseTerms t = phase_terms(n, k, m, DirectDecomp{});
  ResonanceCertificate c;
  c.same_class = t.same_class;
  c.value = certificate_value(t, sigma);
  c.resonant = t.same_class && c.value == 0;
  c.dn = t.dn;
  c.dk = t.dk;
  c.dm = t.dm;
  return c;
}

std::uint8_t resonance_mask(const FreqVec& n, const FreqVec& k, const FreqVec& m) {
  require_nonzero_modes(n, k, m);
  check_bounds(n);
  check_bounds(k);
  check_bounds(m);
  return mask_from_terms(phase_terms(n, k, m, DirectDecomp{}));
}

std::vector<SignTriple> in_nontrivial_resonant_set(const FreqVec& n, const FreqVec& k, const FreqVec& m) {
  if (k + m != n) throw InvalidTriad("k + m != n for " + to_string(k) + " + " + to_string(m) + " vs " + to_string(n));
  std::vector<SignTriple> out;
  if (k.n3 == 0 || m.n3 == 0 || n.n3 == 0) return out;
  const std::uint8_t mask = resonance_mask(n, k, m);
  for (int i = 0; i < 8; ++i) {
    if (mask & (1u << i)) out.push_back(SignTriple::from_index(i));
  }
  return out;
}

BigResonanceCertificate omega_is_zero_exact(const BigFreqVec& n, const BigFreqVec& k, const BigFreqVec& m,
                                            SignTriple s) {
  const auto q = [](const BigFreqVec& v) { return mpz_class(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
  const mpz_class qn = q(n), qk = q(k), qm = q(m);
  if (qn == 0 || qk == 0 || qm == 0) throw InvalidMode("omega is undefined when one of n, k, m is the zero mode");
  const auto dn = square_free_decompose(qn), dk = square_free_decompose(qk), dm = square_free_decompose(qm);
  BigResonanceCertificate c;
  c.same_class = true;
  mpz_class cls = 0;
  const std::pair<const mpz_class*, const mpz_class*> parts[3] = {{&k[2], &dk.d}, {&m[2], &dm.d}, {&n[2], &dn.d}};
  for (const auto& [x3, d] : parts) {
    if (*x3 == 0) continue;
    if (cls == 0) {
      cls = *d;
    } else if (cls != *d) {
      c.same_class = false;
    }
  }
  c.value = s.s1 * k[2] * dm.nu * dn.nu + s.s2 * m[2] * dk.nu * dn.nu - s.s3 * n[2] * dk.nu * dm.nu;
  c.resonant = c.same_class && c.value == 0;
  return c;
}

std::vector<ResonantSet::Group> ResonantSet::groups() const {
  std::vector<Group> out;
  for (std::size_t i = 0; i < triads.size();) {
    std::size_t j = i;
    while (j < triads.size() && triads[j].n == triads[i].n) ++j;
    out.push_back({triads[i].n, i, j});
    i = j;
  }
  return out;
}

std::size_t ResonantSet::sigma_count() const {
  std::size_t c = 0;
  for (const auto& t : triads) c += static_cast<std::size_t>(__builtin_popcount(t.sigma_mask));
  return c;
}

ResonantSet enumerate_resonant_triads(std::int64_t L, EnumerationMode mode, TruncationNorm norm, int shards) {
  check_enumeration_bound(L);
  const auto pts = region_points(L, norm);
  const SquareFreeTable table(max_norm_sq(L, norm));
  const auto classes = mode == EnumerationMode::nontrivial_only ? nontrivial_classes(pts, table)
                                                                 : std::unordered_map<std::int64_t, std::vector<FreqVec>>{};
  const auto nshards = static_cast<std::size_t>(2 * L + 1);
  std::vector<std::vector<Triad>> per_shard(nshards);

#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(shards))
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(nshards); ++s) {
    auto& out = per_shard[static_cast<std::size_t>(s)];
    visit_shard(s - L, pts, classes, table, L, mode, norm,
                [&](const FreqVec& n, const FreqVec& k, const FreqVec& m, std::uint8_t mask) {
                  out.push_back(make_triad(n, k, m, mask, table));
                });
  }

  ResonantSet set{L, mode, norm, {}};
  std::size_t total = 0;
  for (const auto& v : per_shard) total += v.size();
  set.triads.reserve(total);
  for (auto& v : per_shard) set.triads.insert(set.triads.end(), v.begin(), v.end());
  sort_triads(set.triads);
  return set;
}

ResonantSet enumerate_resonant_triads_serial(std::int64_t L, EnumerationMode mode, TruncationNorm norm) {
  check_enumeration_bound(L);
  const auto pts = region_points(L, norm);
  const SquareFreeTable table(max_norm_sq(L, norm));
  ResonantSet set{L, mode, norm, {}};
  for (const auto& k : pts) {
    if (mode == EnumerationMode::nontrivial_only && k.n3 == 0) continue;
    for (const auto& m : pts) {
      if (mode == EnumerationMode::nontrivial_only && m.n3 == 0) continue;
      const FreqVec n = k + m;
      if (!accept_pair(n, L, mode, norm)) continue;
      const std::uint8_t mask = mask_from_terms(phase_terms(n, k, m, table));
      if (mask) set.triads.push_back(make_triad(n, k, m, mask, table));
    }
  }
  sort_triads(set.triads);
  return set;
}

void write_triads_csv(std::ostream& os, const ResonantSet& set) {
  os << "n1,n2,n3,k1,k2,k3,m1,m2,m3,s1,s2,s3,certificate\n";
  for (const auto& t : set.triads) {
    for (int i = 0; i < 8; ++i) {
      if (!(t.sigma_mask & (1u << i))) continue;
      const SignTriple s = SignTriple::from_index(i);
      const auto cert = omega_is_zero_exact(t.n, t.k, t.m, s);
      os << t.n.n1 << ',' << t.n.n2 << ',' << t.n.n3 << ',' << t.k.n1 << ',' << t.k.n2 << ',' << t.k.n3 << ','
         << t.m.n1 << ',' << t.m.n2 << ',' << t.m.n3 << ',' << int(s.s1) << ',' << int(s.s2) << ',' << int(s.s3)
         << ',' << to_string(cert.value) << '\n';
    }
  }
}

std::vector<CensusRow> counting_census(const std::vector<std::int64_t>& L_values, int shards) {
  std::vector<CensusRow> rows;
  for (std::size_t r = 0; r < L_values.size(); ++r) {
    const std::int64_t L = L_values[r];
    if (r > 0 && L <= L_values[r - 1]) throw InvalidInput("counting_census requires ascending L values");
    check_enumeration_bound(L);
    const auto pts = region_points(L, TruncationNorm::euclidean);
    const SquareFreeTable table(max_norm_sq(L, TruncationNorm::euclidean));
    const auto classes = nontrivial_classes(pts, table);
    const std::int64_t off = 2 * L, width = 4 * L + 1;
    const auto key = [&](const FreqVec& n) { return ((n.n1 + off) * width + (n.n2 + off)) * width + (n.n3 + off); };
    const auto nshards = static_cast<std::size_t>(2 * L + 1);
    std::vector<std::unordered_map<std::int64_t, std::int64_t>> per_shard(nshards);

#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(shards))
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(nshards); ++s) {
      auto& counts = per_shard[static_cast<std::size_t>(s)];
      visit_shard(s - L, pts, classes, table, L, EnumerationMode::nontrivial_only, TruncationNorm::euclidean,
                  [&](const FreqVec& n, const FreqVec&, const FreqVec&, std::uint8_t) { ++counts[key(n)]; });
    }

    std::unordered_map<std::int64_t, std::int64_t> counts;
    for (const auto& m : per_shard) {
      for (const auto& [kk, c] : m) counts[kk] += c;
    }
    CensusRow row;
    row.L = L;
    std::int64_t best_key = std::numeric_limits<std::int64_t>::max();
    for (const auto& [kk, c] : counts) {
      row.total += c;
      if (c > row.sup_count || (c == row.sup_count && kk < best_key)) {
        row.sup_count = c;
        best_key = kk;
      }
    }
    if (row.sup_count > 0) {
      row.argmax_n = {best_key / (width * width) - off, (best_key / width) % width - off, best_key % width - off};
    }
    if (!rows.empty() && rows.back().sup_count > 0 && row.sup_count > 0) {
      row.slope = std::log(static_cast<double>(row.sup_count) / static_cast<double>(rows.back().sup_count)) /
                  std::log(static_cast<double>(L) / static_cast<double>(rows.back().L));
    }
    rows.push_back(row);
  }
  return rows;
}

void write_census_csv(std::ostream& os, const std::vector<CensusRow>& rows) {
  os << "L,sup_count,argmax_n,total,slope\n";
  for (const auto& r : rows) {
    os << r.L << ',' << r.sup_count << ",\"" << to_string(r.argmax_n) << "\"," << r.total << ',';
    if (r.slope) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", *r.slope);
      os << buf;
    }
    os << '\n';
  }
}

namespace {

template <class V>
mpq_class poly_impl(const V& k, const V& m, const V& n, const mpq_class& t2, const mpq_class& t3) {
  const auto q = [&](const V& v) {
    return mpq_class(mpq_class(v[0]) * v[0] + t2 * mpq_class(v[1]) * v[1] + t3 * mpq_class(v[2]) * v[2]);
  };
  const mpq_class qk = q(k), qm = q(m), qn = q(n);
  const mpq_class k3s = mpq_class(k[2]) * k[2], m3s = mpq_class(m[2]) * m[2], n3s = mpq_class(n[2]) * n[2];
  const mpq_class first = k3s * qm * qn + m3s * qk * qn - n3s * qk * qm;
  return mpq_class(first * first - 4 * k3s * m3s * qk * qm * qn * qn);
}

BigFreqVec to_big(const FreqVec& v) { return {mpz_class(v.n1), mpz_class(v.n2), mpz_class(v.n3)}; }

}  // namespace

mpq_class resonance_polynomial(const FreqVec& k, const FreqVec& m, const FreqVec& n, const mpq_class& theta2,
                               const mpq_class& theta3) {
  return poly_impl(to_big(k), to_big(m), to_big(n), theta2, theta3);
}

mpq_class resonance_polynomial(const BigFreqVec& k, const BigFreqVec& m, const BigFreqVec& n,
                               const mpq_class& theta2, const mpq_class& theta3) {
  return poly_impl(k, m, n, theta2, theta3);
}

SmallDivisorAudit min_omega_audit(std::int64_t N, int shards) {
  if (N < 1) throw InvalidInput("min_omega_audit requires N >= 1");
  check_enumeration_bound(N);
  const auto pts = region_points(N, TruncationNorm::euclidean);
  const SquareFreeTable table(max_norm_sq(N, TruncationNorm::euclidean));
  std::vector<double> ratio(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ratio[i] = static_cast<double>(pts[i].n3) / std::sqrt(static_cast<double>(norm_sq(pts[i])));
  }

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    FreqVec n, k;
    SignTriple sigma;
    std::int64_t count = 0;
  };
  const auto nthreads = thread_count(shards);
  std::vector<Best> best(pts.size());

#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(pts.size()); ++i) {
    Best& b = best[static_cast<std::size_t>(i)];
    const FreqVec& k = pts[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const FreqVec& m = pts[j];
      const FreqVec n = k + m;
      if (n.is_zero()) continue;
      const std::uint8_t mask = mask_from_terms(phase_terms(n, k, m, table));
      const double rn = static_cast<double>(n.n3) / std::sqrt(static_cast<double>(norm_sq(n)));
      for (int s = 0; s < 8; ++s) {
        if (mask & (1u << s)) continue;
        const SignTriple sg = SignTriple::from_index(s);
        const double w = std::abs(sg.s1 * ratio[static_cast<std::size_t>(i)] + sg.s2 * ratio[j] - sg.s3 * rn);
        ++b.count;
        if (w < b.value) {
          b.value = w;
          b.n = n;
          b.k = k;
          b.sigma = sg;
        }
      }
    }
  }

  SmallDivisorAudit audit;
  audit.N = N;
  audit.bound = 1.0 / (27.0 * 16.0 * std::pow(static_cast<double>(N), 12.0));
  Best overall;
  for (const auto& b : best) {
    overall.count += b.count;
    if (b.value < overall.value) {
      overall.value = b.value;
      overall.n = b.n;
      overall.k = b.k;
      overall.sigma = b.sigma;
    }
  }
  audit.min_abs_omega = overall.value;
  audit.argmin_n = overall.n;
  audit.argmin_k = overall.k;
  audit.argmin_sigma = overall.sigma;
  audit.nonresonant_count = overall.count;
  audit.pass = audit.min_abs_omega >= audit.bound;
  return audit;
}

ProductIdentityValue omega_product_value(const FreqVec& n, const FreqVec& k, const FreqVec& m) {
  require_nonzero_modes(n, k, m);
  if (k + m != n) throw InvalidTriad("k + m != n");
  using ld = long double;
  const ld qk = static_cast<ld>(norm_sq(k)), qm = static_cast<ld>(norm_sq(m)), qn = static_cast<ld>(norm_sq(n));
  const ld rk = static_cast<ld>(k.n3) / std::sqrt(qk);
  const ld rm = static_cast<ld>(m.n3) / std::sqrt(qm);
  const ld rn = static_cast<ld>(n.n3) / std::sqrt(qn);
  ld prod = 1.0L;
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) prod *= s1 * rk + s2 * rm + rn;  // sigma3 = -
  }
  const ld scaled = prod * qk * qk * qm * qm * qn * qn;
  const ld nearest = std::round(scaled);
  return {static_cast<wide_int>(nearest), static_cast<double>(std::abs(scaled - nearest))};
}

wide_int omega_product_identity(const FreqVec& n, const FreqVec& k, const FreqVec& m) {
  const auto v = omega_product_value(n, k, m);
  if (v.residual > 1e-6) {
    throw NumericalIdentityError("omega product identity violated for n=" + to_string(n) + " k=" + to_string(k) +
                                 ": distance to nearest integer " + std::to_string(v.residual));
  }
  return v.nearest;
}

}  // namespace rotres
