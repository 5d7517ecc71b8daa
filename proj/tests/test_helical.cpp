#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rotres/helical.hpp"
#include "rotres/random_field.hpp"

using namespace rotres;
using doctest::Approx;

namespace {

const cplx I(0.0, 1.0);
const double r2 = 1.0 / std::sqrt(2.0);

double vdiff(const Vec3c& a, const Vec3c& b) {
  double m = 0.0;
  for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double fdiff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, vdiff(a[i], b[i]));
  return m;
}

Vec3c cross(const Vec3c& a, const Vec3c& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3c conj(const Vec3c& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }

Vec3c as_vec(const FreqVec& n) { return {double(n.n1), double(n.n2), double(n.n3)}; }

}  // namespace

TEST_CASE("leray_project examples") {
  CHECK(vdiff(leray_project({1, 0, 0}, {1.0, 0.0, 0.0}), {0.0, 0.0, 0.0}) == 0.0);
  CHECK(vdiff(leray_project({1, 0, 0}, {0.0, 1.0, 0.0}), {0.0, 1.0, 0.0}) == 0.0);
  CHECK(vdiff(leray_project({1, 1, 0}, {1.0, 0.0, 0.0}), {0.5, -0.5, 0.0}) < 1e-16);
  CHECK_THROWS_AS(leray_project({0, 0, 0}, {1.0, 0.0, 0.0}), InvalidMode);
}

TEST_CASE("leray_project is an orthogonal projector") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-9, 9);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    FreqVec n{c(rng), c(rng), c(rng)};
    if (n.is_zero()) continue;
    Vec3c v{cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    const Vec3c p = leray_project(n, v);
    CHECK(std::abs(dot(as_vec(n), p)) < 1e-13);
    CHECK(vdiff(leray_project(n, p), p) < 1e-14);
    // (v - Pv) is parallel to n, hence orthogonal to Pv.
    Vec3c r{v[0] - p[0], v[1] - p[1], v[2] - p[2]};
    CHECK(std::abs(inner(r, p)) < 1e-12);
  }
}

TEST_CASE("helical_basis examples") {
  const auto z = helical_basis({0, 0, 1});
  CHECK(vdiff(z.plus, {r2, -I * r2, 0.0}) < 1e-16);
  CHECK(vdiff(z.minus, {r2, I * r2, 0.0}) < 1e-16);
  const auto x = helical_basis({1, 0, 0});
  CHECK(vdiff(x.plus, {0.0, -I * r2, -r2}) < 1e-16);
  CHECK(vdiff(x.minus, {0.0, I * r2, -r2}) < 1e-16);
  CHECK_THROWS_AS(helical_basis({0, 0, 0}), InvalidMode);
}

TEST_CASE("helical basis identities on the box |n|_inf <= 32") {
  double worst = 0.0;
  for (int a = -32; a <= 32; ++a) {
    for (int b = -32; b <= 32; ++b) {
      for (int c = -32; c <= 32; ++c) {
        const FreqVec n{a, b, c};
        if (n.is_zero()) continue;
        const auto e = helical_basis(n);
        const auto em = helical_basis(-n);
        const double r = std::sqrt(double(norm_sq(n)));
        const Vec3c nv = as_vec(n);
        for (int s = 0; s < 2; ++s) {
          const double sg = s == 0 ? 1.0 : -1.0;
          worst = std::max(worst, std::abs(inner(e[s], e[s]) - 1.0));
          worst = std::max(worst, std::abs(dot(nv, e[s])) / r);
          // Eigenvectors of n/|n| x (.) with eigenvalue sigma i.
          Vec3c ce = cross(nv, e[s]);
          for (auto& v : ce) v /= r;
          worst = std::max(worst, vdiff(ce, {sg * I * e[s][0], sg * I * e[s][1], sg * I * e[s][2]}));
          // e^sigma(-n) = conj(e^sigma(n)).
          worst = std::max(worst, vdiff(em[s], conj(e[s])));
        }
        worst = std::max(worst, std::abs(inner(e.plus, e.minus)));
      }
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("helical_decompose examples") {
  SpectralField f(2);
  f.at({0, 0, 1}) = helical_basis({0, 0, 1}).plus;
  const auto h = helical_decompose(f);
  const auto& c = h[f.index({0, 0, 1})];
  CHECK(std::abs(c[0] - 1.0) < 1e-15);
  CHECK(std::abs(c[1]) < 1e-15);

  SpectralField grad(2);
  const FreqVec n{1, 2, -1};
  grad.at(n) = as_vec(n);
  CHECK_THROWS_AS(helical_decompose(grad), ContractViolation);
  const auto hp = helical_decompose(grad, DecomposeMode::project);
  CHECK(std::abs(hp[grad.index(n)][0]) < 1e-15);
  CHECK(std::abs(hp[grad.index(n)][1]) < 1e-15);
}

TEST_CASE("helical round trip on random divergence-free fields") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = random_field(6, seed);
    CHECK(fdiff(helical_recompose(helical_decompose(f)), f) <= 1e-13);
  }
}

TEST_CASE("real fields have conjugate helical amplitudes at -n") {
  const auto f = random_field(6, 42);
  CHECK(hermitian_defect(f) < 1e-15);
  const auto h = helical_decompose(f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t j = f.index(-f.mode(i));
    for (int s = 0; s < 2; ++s) worst = std::max(worst, std::abs(h[j][s] - std::conj(h[i][s])));
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("poincare_propagate examples") {
  const auto f = random_field(4, 5);
  CHECK(fdiff(poincare_propagate(f, 0.0), f) <= 1e-15);
  CHECK(fdiff(poincare_propagate_alt(f, 0.0), f) == 0.0);

  SpectralField e(1);
  e.at({0, 0, 1}) = helical_basis({0, 0, 1}).plus;
  const auto h = helical_decompose(poincare_propagate(e, std::numbers::pi));
  CHECK(std::abs(h[e.index({0, 0, 1})][0] - (-1.0)) < 1e-15);

  SpectralField a(1);
  a.at({0, 0, 1}) = {1.0, 0.0, 0.0};
  const auto out = poincare_propagate_alt(a, std::numbers::pi / 2);
  CHECK(vdiff(out.at({0, 0, 1}), {0.0, -1.0, 0.0}) < 1e-15);
}

TEST_CASE("propagator representations agree, are unitary and form a group") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> th(-10.0, 10.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = random_field(5, seed);
    const double a = th(rng), b = th(rng);
    const auto p = poincare_propagate(f, a);
    CHECK(fdiff(p, poincare_propagate_alt(f, a)) <= 1e-13);
    CHECK(std::abs(hs_norm(p, 1.0) - hs_norm(f, 1.0)) <= 1e-13);
    CHECK(fdiff(poincare_propagate(p, b), poincare_propagate(f, a + b)) <= 1e-12);
    CHECK(hermitian_defect(p) < 1e-14);
  }
}

TEST_CASE("apply_dissipation multiplies by the exact semigroup") {
  auto f = random_field(3, 1);
  const auto f0 = f;
  apply_dissipation(f, 0.3, 0.9, 0.5);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const FreqVec n = f.mode(i);
    if (n.is_zero()) continue;
    const double m = std::exp(-0.3 * 0.5 * std::pow(double(norm_sq(n)), 0.9));
    for (int j = 0; j < 3; ++j) CHECK(std::abs(f[i][j] - m * f0[i][j]) < 1e-16);
  }
}

TEST_CASE("mean_frame_shift examples") {
  const auto z = mean_frame_shift({0, 0, 0}, 3.0, 7.0);
  CHECK(z == Vec3r{0, 0, 0});
  const auto r = mean_frame_shift({1, 0, 0}, 2.0, std::numbers::pi / 4);
  CHECK(std::abs(r[0]) < 1e-15);
  CHECK(r[1] == Approx(-1.0));
  CHECK(r[2] == 0.0);
  const auto v = mean_frame_shift({0, 0, 5}, 1.3, 2.1);
  CHECK(v == Vec3r{0, 0, 5});
}

TEST_CASE("hs_inner examples") {
  SpectralField f(1);
  f.at({0, 0, 1}) = helical_basis({0, 0, 1}).plus;
  CHECK(std::abs(hs_inner(f, f, 1.0) - 1.0) < 1e-15);
  const auto a = random_complex_field(3, 1), b = random_complex_field(3, 2);
  cplx l2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a.mode(i).is_zero()) l2 += inner(a[i], b[i]);
  }
  CHECK(std::abs(hs_inner(a, b, 0.0) - l2) < 1e-14);
  // Sesquilinear: conjugate symmetric.
  CHECK(std::abs(hs_inner(a, b, 1.0) - std::conj(hs_inner(b, a, 1.0))) < 1e-14);
  CHECK_THROWS_AS(hs_inner(a, random_field(2, 1), 1.0), InvalidInput);
}
