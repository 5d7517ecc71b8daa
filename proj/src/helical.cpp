#include "rotres/helical.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace rotres {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_nonzero(const FreqVec& n) {
  if (n.is_zero()) throw InvalidMode("mode n = 0 has no Leray projection or helical basis");
}

}  // namespace

Vec3c leray_project(const FreqVec& n, const Vec3c& v) {
  require_nonzero(n);
  const double q = static_cast<double>(norm_sq(n));
  const double nn[3] = {static_cast<double>(n.n1), static_cast<double>(n.n2), static_cast<double>(n.n3)};
  const cplx nv = nn[0] * v[0] + nn[1] * v[1] + nn[2] * v[2];
  Vec3c out;
  for (int i = 0; i < 3; ++i) out[i] = v[i] - nn[i] * nv / q;
  return out;
}

HelicalBasis helical_basis(const FreqVec& n) {
  require_nonzero(n);
  const double r2 = 1.0 / std::sqrt(2.0);
  const std::int64_t h2 = n.n1 * n.n1 + n.n2 * n.n2;
  if (h2 == 0) {
    // n3 != 0 here since n != 0.
    const double sg = n.n3 > 0 ? 1.0 : -1.0;
    return {Vec3c{r2, -kI * sg * r2, 0.0}, Vec3c{r2, kI * sg * r2, 0.0}};
  }
  const double nabs = std::sqrt(static_cast<double>(norm_sq(n)));
  const double habs = std::sqrt(static_cast<double>(h2));
  const double c = 1.0 / (std::sqrt(2.0) * nabs * habs);
  const double n1 = static_cast<double>(n.n1), n2 = static_cast<double>(n.n2), n3 = static_cast<double>(n.n3);
  const double hh = static_cast<double>(h2);
  HelicalBasis b;
  b.plus = {c * cplx(n1 * n3, n2 * nabs), c * cplx(n2 * n3, -n1 * nabs), cplx(-c * hh, 0.0)};
  b.minus = {c * cplx(n1 * n3, -n2 * nabs), c * cplx(n2 * n3, n1 * nabs), cplx(-c * hh, 0.0)};
  return b;
}

std::shared_ptr<const BasisTable> basis_table(int trunc) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const BasisTable>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(trunc); it != cache.end()) return it->second;
  auto t = std::make_shared<BasisTable>();
  t->trunc = trunc;
  const SpectralField shape(trunc);
  t->basis.resize(shape.size());
  t->freq.assign(shape.size(), 0.0);
  t->norm.assign(shape.size(), 0.0);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const FreqVec n = shape.mode(i);
    if (n.is_zero()) continue;
    t->basis[i] = helical_basis(n);
    t->norm[i] = std::sqrt(static_cast<double>(norm_sq(n)));
    t->freq[i] = static_cast<double>(n.n3) / t->norm[i];
  }
  cache.emplace(trunc, t);
  return t;
}

HelicalField helical_decompose(const SpectralField& f, DecomposeMode mode) {
  if (mode == DecomposeMode::strict) require_divergence_free(f);
  const auto table = basis_table(f.trunc());
  HelicalField h(f.trunc());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (table->norm[i] == 0.0) continue;
    h[i][0] = inner(f[i], table->basis[i].plus);
    h[i][1] = inner(f[i], table->basis[i].minus);
  }
  return h;
}

SpectralField helical_recompose(const HelicalField& h) {
  const auto table = basis_table(h.trunc());
  SpectralField f(h.trunc(), kDivergenceFree | kMeanZero);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (table->norm[i] == 0.0) continue;
    const auto& b = table->basis[i];
    for (int j = 0; j < 3; ++j) f[i][j] = h[i][0] * b.plus[j] + h[i][1] * b.minus[j];
  }
  return f;
}

SpectralField poincare_propagate(const SpectralField& f, double theta) {
  const auto table = basis_table(f.trunc());
  SpectralField out(f.trunc(), f.flags());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (table->norm[i] == 0.0) {
      out[i] = f[i];
      continue;
    }
    const auto& b = table->basis[i];
    const cplx phase = std::polar(1.0, -theta * table->freq[i]);
    const cplx cp = inner(f[i], b.plus) * phase;
    const cplx cm = inner(f[i], b.minus) * std::conj(phase);
    for (int j = 0; j < 3; ++j) out[i][j] = cp * b.plus[j] + cm * b.minus[j];
  }
  return out;
}

SpectralField poincare_propagate_alt(const SpectralField& f, double theta) {
  const auto table = basis_table(f.trunc());
  SpectralField out(f.trunc(), f.flags());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const FreqVec n = f.mode(i);
    if (n.is_zero()) {
      out[i] = f[i];
      continue;
    }
    const double r = table->norm[i];
    const double c = std::cos(theta * table->freq[i]);
    const double s = std::sin(theta * table->freq[i]);
    const double e[3] = {n.n1 / r, n.n2 / r, n.n3 / r};
    const auto& a = f[i];
    const Vec3c cross = {e[1] * a[2] - e[2] * a[1], e[2] * a[0] - e[0] * a[2], e[0] * a[1] - e[1] * a[0]};
    for (int j = 0; j < 3; ++j) out[i][j] = c * a[j] - s * cross[j];
  }
  return out;
}

void apply_dissipation(SpectralField& f, double nu, double alpha, double dt) {
  const auto table = basis_table(f.trunc());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = table->norm[i];
    if (r == 0.0) continue;
    const double damp = std::exp(-nu * dt * std::pow(r, 2.0 * alpha));
    for (auto& c : f[i]) c *= damp;
  }
}

Vec3r mean_frame_shift(const Vec3r& u0_mean, double omega, double t) {
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  return {u0_mean[0] * c + u0_mean[1] * s, -u0_mean[0] * s + u0_mean[1] * c, u0_mean[2]};
}

}  // namespace rotres
