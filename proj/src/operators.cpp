#include "rotres/operators.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "rotres/transform.hpp"

namespace rotres {

namespace {

constexpr cplx kI{0.0, 1.0};

std::uint32_t output_flags(const SpectralField& a, const SpectralField& b) {
  std::uint32_t f = kDivergenceFree | kMeanZero;
  if (a.has(kRealValued) && b.has(kRealValued)) f |= kRealValued;
  return f;
}

void require_operands(const SpectralField& a, const SpectralField& b) {
  require_same_trunc(a, b);
  require_divergence_free(a, kOperatorDivTol);
  require_divergence_free(b, kOperatorDivTol);
}

}  // namespace

SpectralField bilinear_full(double theta, const SpectralField& a, const SpectralField& b) {
  require_operands(a, b);
  const SpectralField at = theta == 0.0 ? a : poincare_propagate(a, theta);
  const SpectralField bt = theta == 0.0 ? b : poincare_propagate(b, theta);
  SpectralField p = advective_product(at, bt);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const FreqVec n = p.mode(i);
    p[i] = n.is_zero() ? Vec3c{} : leray_project(n, p[i]);
  }
  p.set_flags(output_flags(a, b));
  return theta == 0.0 ? p : poincare_propagate(p, -theta);
}

ResonantInteractions::ResonantInteractions(const ResonantSet& R, int trunc) : trunc_(trunc) {
  if (R.mode != EnumerationMode::all_omega_zero || R.norm != TruncationNorm::cube) {
    throw InvalidInput("B_R needs an all-omega-zero resonant set on the cube truncation");
  }
  if (R.L < trunc) {
    throw InvalidInput("resonant set truncation " + std::to_string(R.L) + " is smaller than field truncation " +
                       std::to_string(trunc));
  }
  const auto table = basis_table(trunc);
  const SpectralField shape(trunc);
  std::array<std::vector<Term>, 2> pending;
  for (const auto& grp : R.groups()) {
    if (linf(grp.n) > trunc) continue;
    const auto out = static_cast<std::uint32_t>(shape.index(grp.n));
    for (auto& p : pending) p.clear();
    for (std::size_t t = grp.begin; t < grp.end; ++t) {
      const Triad& tr = R.triads[t];
      if (linf(tr.k) > trunc || linf(tr.m) > trunc) continue;
      ++triad_count_;
      const auto ki = static_cast<std::uint32_t>(shape.index(tr.k));
      const auto mi = static_cast<std::uint32_t>(shape.index(tr.m));
      const Vec3c mvec{static_cast<double>(tr.m.n1), static_cast<double>(tr.m.n2), static_cast<double>(tr.m.n3)};
      for (int s = 0; s < 8; ++s) {
        if (!(tr.sigma_mask & (1u << s))) continue;
        const SignTriple sg = SignTriple::from_index(s);
        const int i1 = sg.s1 > 0 ? 0 : 1, i2 = sg.s2 > 0 ? 0 : 1, i3 = sg.s3 > 0 ? 0 : 1;
        const cplx g = kI * dot(table->basis[ki][i1], mvec) * inner(table->basis[mi][i2], table->basis[out][i3]);
        if (g == cplx{}) continue;
        pending[static_cast<std::size_t>(i3)].push_back(
            {ki, mi, static_cast<std::uint8_t>(i1), static_cast<std::uint8_t>(i2), g});
      }
    }
    for (std::uint8_t s3 = 0; s3 < 2; ++s3) {
      if (pending[s3].empty()) continue;
      groups_.push_back({out, s3, terms_.size(), terms_.size() + pending[s3].size()});
      terms_.insert(terms_.end(), pending[s3].begin(), pending[s3].end());
    }
  }
}

void ResonantInteractions::accumulate(const Group& g, const HelicalField& a, const HelicalField& b,
                                      HelicalField& out) const {
  cplx acc = 0.0;
  for (std::size_t t = g.begin; t < g.end; ++t) {
    const Term& term = terms_[t];
    acc += term.g * a[term.k][term.s1] * b[term.m][term.s2];
  }
  out[g.out][g.s3] = acc;
}

HelicalField ResonantInteractions::apply(const HelicalField& a, const HelicalField& b) const {
  if (a.trunc() != trunc_ || b.trunc() != trunc_) throw InvalidInput("B_R operand truncation mismatch");
  HelicalField out(trunc_);
#pragma omp parallel for schedule(static)
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) accumulate(groups_[gi], a, b, out);
  return out;
}

HelicalField ResonantInteractions::apply_serial(const HelicalField& a, const HelicalField& b) const {
  if (a.trunc() != trunc_ || b.trunc() != trunc_) throw InvalidInput("B_R operand truncation mismatch");
  HelicalField out(trunc_);
  for (const auto& g : groups_) accumulate(g, a, b, out);
  return out;
}

std::shared_ptr<const ResonantInteractions> resonant_interactions(int trunc) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ResonantInteractions>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(trunc); it != cache.end()) return it->second;
  const auto R = enumerate_resonant_triads(trunc, EnumerationMode::all_omega_zero, TruncationNorm::cube);
  auto p = std::make_shared<const ResonantInteractions>(R, trunc);
  cache.emplace(trunc, p);
  return p;
}

namespace {

template <class Apply>
SpectralField resonant_impl(const SpectralField& a, const SpectralField& b, Apply&& apply) {
  require_operands(a, b);
  const auto ha = helical_decompose(a, DecomposeMode::project);
  const auto hb = helical_decompose(b, DecomposeMode::project);
  SpectralField out = helical_recompose(apply(ha, hb));
  out.set_flags(output_flags(a, b));
  return out;
}

}  // namespace

SpectralField bilinear_resonant(const SpectralField& a, const SpectralField& b, const ResonantInteractions& R) {
  return resonant_impl(a, b, [&](const HelicalField& x, const HelicalField& y) { return R.apply(x, y); });
}

SpectralField bilinear_resonant(const SpectralField& a, const SpectralField& b, const ResonantSet& R) {
  return bilinear_resonant(a, b, ResonantInteractions(R, a.trunc()));
}

SpectralField bilinear_resonant_serial(const SpectralField& a, const SpectralField& b,
                                       const ResonantInteractions& R) {
  return resonant_impl(a, b, [&](const HelicalField& x, const HelicalField& y) { return R.apply_serial(x, y); });
}

SpectralField bilinear_nonresonant(double theta, const SpectralField& a, const SpectralField& b,
                                   const ResonantInteractions& R) {
  return bilinear_full(theta, a, b) - bilinear_resonant(a, b, R);
}

SpectralField bilinear_nonresonant(double theta, const SpectralField& a, const SpectralField& b,
                                   const ResonantSet& R) {
  return bilinear_nonresonant(theta, a, b, ResonantInteractions(R, a.trunc()));
}

SplitField split_bar_osc(const SpectralField& f) {
  const int N = f.trunc();
  SplitField s;
  s.trunc = N;
  s.bar_h = {PlaneField(N), PlaneField(N)};
  s.bar_3 = PlaneField(N);
  s.osc = f;
  for (std::size_t i = 0; i < s.bar_3.size(); ++i) {
    const auto [n1, n2] = s.bar_3.mode(i);
    const FreqVec n{n1, n2, 0};
    const Vec3c& v = f.at(n);
    s.bar_h[0][i] = v[0];
    s.bar_h[1][i] = v[1];
    s.bar_3[i] = v[2];
    s.osc.at(n) = Vec3c{};
  }
  return s;
}

SpectralField reassemble(const SplitField& s) {
  SpectralField f = s.osc;
  for (std::size_t i = 0; i < s.bar_3.size(); ++i) {
    const auto [n1, n2] = s.bar_3.mode(i);
    f.at(FreqVec{n1, n2, 0}) = {s.bar_h[0][i], s.bar_h[1][i], s.bar_3[i]};
  }
  return f;
}

SpectralField bar_part(const SpectralField& f) {
  SpectralField out(f.trunc(), f.flags());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.mode(i).n3 == 0) out[i] = f[i];
  }
  return out;
}

SpectralField osc_part(const SpectralField& f) {
  SpectralField out(f.trunc(), f.flags());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.mode(i).n3 != 0) out[i] = f[i];
  }
  return out;
}

CancellationReport verify_cancellations(const SpectralField& a, const SpectralField& b, double s,
                                        const ResonantInteractions& R) {
  constexpr double kRealTol = 1e-12;
  CancellationReport rep;
  rep.applicable = hermitian_defect(a) <= kRealTol && hermitian_defect(b) <= kRealTol;
  const SpectralField a_bar = bar_part(a), a_osc = osc_part(a);
  const SpectralField b_bar = bar_part(b), b_osc = osc_part(b);

  const SpectralField x0 = bilinear_resonant(a_osc, a_osc, R);
  rep.values[0] = hs_norm(bar_part(x0), 0.0);
  rep.scales[0] = hs_norm(x0, 0.0);

  const SpectralField x1 = bilinear_resonant(a_bar, b_osc, R);
  rep.values[1] = std::abs(hs_inner(x1, b_osc, s));
  rep.scales[1] = hs_norm(x1, s) * hs_norm(b_osc, s);

  const SpectralField x2 = bilinear_resonant(b_osc, b_bar, R);
  rep.values[2] = std::abs(hs_inner(x2, b_osc, s));
  rep.scales[2] = hs_norm(x2, s) * hs_norm(b_osc, s);

  const SpectralField x3 = bilinear_resonant(a_osc, b_osc, R);
  rep.values[3] = std::abs(hs_inner(x3, b_osc, 0.0));
  rep.scales[3] = hs_norm(x3, 0.0) * hs_norm(b_osc, 0.0);

  rep.pass = true;
  for (int i = 0; i < 4; ++i) rep.pass = rep.pass && rep.values[i] <= rep.tolerance * rep.scales[i];
  return rep;
}

std::optional<double> trilinear_ratio(const SpectralField& a, double eps, const ResonantInteractions& R) {
  const SpectralField a_osc = osc_part(a);
  const double den = std::pow(hs_norm(a_osc, 1.0), 2) * hs_norm(a_osc, 1.5 + eps);
  if (den == 0.0) return std::nullopt;
  const SpectralField x = bilinear_resonant(a_osc, a_osc, R);
  return std::abs(hs_inner(x, a_osc, 1.0)) / den;
}

std::optional<double> nonresonant_ratio(double theta, const SpectralField& v, const SpectralField& w,
                                        const ResonantInteractions& R) {
  const double den = hs_norm(v, 1.0) * hs_norm(v, 1.75) * hs_norm(w, 1.75);
  if (den == 0.0) return std::nullopt;
  return std::abs(hs_inner(bilinear_nonresonant(theta, v, v, R), w, 1.0)) / den;
}

}  // namespace rotres
