#include "rotres/verify.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "rotres/operators.hpp"
#include "rotres/pell.hpp"
#include "rotres/random_field.hpp"

namespace rotres {

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> kSuites = {"cancellations", "small-divisor", "pell", "trilinear",
                                                   "propagator"};
  return kSuites;
}

namespace {

int trials_or(const VerifyOptions& opt, int fallback) { return opt.trials >= 0 ? opt.trials : fallback; }

std::vector<VerifyReport> cancellations(const VerifyOptions& opt) {
  const int trials = trials_or(opt, 50);
  const auto R = resonant_interactions(opt.N);
  std::vector<VerifyReport> out;
  for (const char* name : CancellationReport::kNames) out.push_back({name, trials, 0.0, 1e-11, true});
  for (int t = 0; t < trials; ++t) {
    const auto a = random_field(opt.N, opt.seed + 2 * static_cast<std::uint64_t>(t));
    const auto b = random_field(opt.N, opt.seed + 2 * static_cast<std::uint64_t>(t) + 1);
    const auto rep = verify_cancellations(a, b, 1.0, *R);
    for (int i = 0; i < 4; ++i) {
      const double rel = rep.scales[i] > 0.0 ? rep.values[i] / rep.scales[i] : rep.values[i];
      out[i].max_abs = std::max(out[i].max_abs, rel);
    }
  }
  for (auto& r : out) r.pass = r.max_abs <= r.tolerance;
  return out;
}

std::vector<VerifyReport> small_divisor(const VerifyOptions& opt) {
  std::vector<VerifyReport> out;
  for (int N : {4, 8}) {
    const auto audit = min_omega_audit(N);
    out.push_back({"min |omega| >= 3^-3 2^-4 N^-12, N=" + std::to_string(N), audit.nonresonant_count,
                   audit.min_abs_omega, audit.bound, audit.pass});
  }
  const int trials = trials_or(opt, 1000);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> comp(-3, 3);
  VerifyReport prod{"omega product identity is an integer", trials, 0.0, 1e-6, true};
  for (int t = 0; t < trials;) {
    const FreqVec k{comp(rng), comp(rng), comp(rng)};
    const FreqVec m{comp(rng), comp(rng), comp(rng)};
    const FreqVec n = k + m;
    if (k.is_zero() || m.is_zero() || n.is_zero()) continue;
    prod.max_abs = std::max(prod.max_abs, omega_product_value(n, k, m).residual);
    ++t;
  }
  prod.pass = prod.max_abs <= prod.tolerance;
  out.push_back(prod);
  return out;
}

std::vector<VerifyReport> pell(const VerifyOptions& opt) {
  const int J = trials_or(opt, 10);
  if (J < 1) throw InvalidInput("pell suite needs at least one record");
  const auto a = pell_sequence(J + 1);
  int recurrence_fail = 0;
  for (std::size_t j = 0; j + 2 < a.size(); ++j) recurrence_fail += (a[j + 2] + 4 * a[j + 1] + a[j] != 0);
  recurrence_fail += (a[0] != 0) + (a[1] != 1);

  std::vector<PellTriadRecord> records;
  int fails[6] = {};
  for (int j = 1; j <= J; ++j) {
    records.push_back(pell_triad(j));
    const auto c = check_pell_record(records.back());
    fails[0] += !c.pell0;
    fails[1] += !c.pell;
    fails[2] += !c.growth;
    fails[3] += !c.certified;
    fails[4] += !c.polynomial_zero;
    fails[5] += !c.discriminant_nonzero;
  }
  const bool distinct = curve_invariants_distinct(records);
  const char* names[6] = {"x^2+4xy+y^2 = 1", "X^2-3y^2 = 1", "|a_{j+1}| >= 3|a_j|+1", "exact resonance certificate 0",
                          "resonance polynomial P(k,m,n;1,1) = 0", "irreducibility discriminant nonzero"};
  std::vector<VerifyReport> out;
  out.push_back({"a_{j+2}+4a_{j+1}+a_j = 0", J, static_cast<double>(recurrence_fail), 0.0, recurrence_fail == 0});
  for (int i = 0; i < 6; ++i) out.push_back({names[i], J, static_cast<double>(fails[i]), 0.0, fails[i] == 0});
  out.push_back({"invariant sets pairwise distinct", J, distinct ? 0.0 : 1.0, 0.0, distinct});
  return out;
}

std::vector<VerifyReport> trilinear(const VerifyOptions& opt) {
  const int trials = trials_or(opt, 200);
  const auto R = resonant_interactions(opt.N);
  const double inf = std::numeric_limits<double>::infinity();
  VerifyReport tri{"|<B_R(a_osc,a_osc),a_osc>_H1| / (|a_osc|_H1^2 |a_osc|_H^{1.6})", trials, 0.0, inf, true};
  VerifyReport nr{"|<B_NR(theta;v,v),w>_H1| / (|v|_H1 |v|_H^{7/4} |w|_H^{7/4})", trials, 0.0, inf, true};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> theta(0.0, 100.0);
  for (int t = 0; t < trials; ++t) {
    const auto a = random_field(opt.N, opt.seed + 3 * static_cast<std::uint64_t>(t));
    const auto r = trilinear_ratio(a, 0.1, *R);
    if (!r || !std::isfinite(*r)) tri.pass = false;
    else tri.max_abs = std::max(tri.max_abs, *r);
    const auto w = random_field(opt.N, opt.seed + 3 * static_cast<std::uint64_t>(t) + 1);
    const auto q = nonresonant_ratio(theta(rng), a, w, *R);
    if (!q || !std::isfinite(*q)) nr.pass = false;
    else nr.max_abs = std::max(nr.max_abs, *q);
  }
  return {tri, nr};
}

std::vector<VerifyReport> propagator(const VerifyOptions& opt) {
  const int trials = trials_or(opt, 100);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> theta(-10.0, 10.0);
  VerifyReport agree{"phase and rotation forms of L(theta) agree", trials, 0.0, 1e-13, true};
  VerifyReport unitary{"|L(theta)f|_H1 = |f|_H1", trials, 0.0, 1e-13, true};
  VerifyReport group{"L(a)L(b) = L(a+b)", trials, 0.0, 1e-12, true};
  for (int t = 0; t < trials; ++t) {
    const auto f = random_field(opt.N, opt.seed + static_cast<std::uint64_t>(t));
    const double scale = max_abs(f);
    const double th = theta(rng), th2 = theta(rng);
    const auto p = poincare_propagate(f, th);
    agree.max_abs = std::max(agree.max_abs, max_abs(p - poincare_propagate_alt(f, th)) / scale);
    unitary.max_abs = std::max(unitary.max_abs, std::abs(hs_norm(p, 1.0) - hs_norm(f, 1.0)) / hs_norm(f, 1.0));
    const auto pp = poincare_propagate(p, th2);
    group.max_abs = std::max(group.max_abs, max_abs(pp - poincare_propagate(f, th + th2)) / scale);
  }
  for (auto* r : {&agree, &unitary, &group}) r->pass = r->max_abs <= r->tolerance;
  return {agree, unitary, group};
}

}  // namespace

std::vector<VerifyReport> run_verify_suite(const std::string& suite, const VerifyOptions& opt) {
  if (suite == "cancellations") return cancellations(opt);
  if (suite == "small-divisor") return small_divisor(opt);
  if (suite == "pell") return pell(opt);
  if (suite == "trilinear") return trilinear(opt);
  if (suite == "propagator") return propagator(opt);
  throw InvalidInput("unknown verify suite '" + suite + "'");
}

}  // namespace rotres
