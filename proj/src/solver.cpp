#include "rotres/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "rotres/transform.hpp"

namespace rotres {

std::string to_string(Scheme s) { return s == Scheme::if_rk2 ? "if-rk2" : "if-euler"; }

std::string to_string(SystemKind s) {
  switch (s) {
    case SystemKind::original: return "original";
    case SystemKind::rotated: return "rotated";
    case SystemKind::limit: return "limit";
    case SystemKind::split: return "split";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu", "viscosity must be positive");
  if (!(alpha > 0.75 && alpha <= 1.0)) throw ConfigError("alpha", "must lie in (3/4, 1]");
  if (!std::isfinite(omega)) throw ConfigError("omega", "must be finite");
  if (N < 1 || N > 64) throw ConfigError("N", "truncation must be in [1, 64]");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "time step must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T", "final time must be non-negative");
  if (T > 0.0 && dt > T) throw ConfigError("dt", "time step must not exceed T");
  if (samples < 1) throw ConfigError("samples", "need at least one sample interval");
  if (!dealias) throw ConfigError("dealias", "only dealiased products are implemented");
  if (!(cfl_limit > 0.0)) throw ConfigError("cfl_limit", "must be positive");
}

double target_dt(const SolverConfig& cfg) {
  const bool rotating = cfg.system == SystemKind::original || cfg.system == SystemKind::rotated;
  if (!rotating || cfg.allow_large_dt) return cfg.dt;
  return std::min(cfg.dt, 0.1 / std::max(1.0, std::abs(cfg.omega)));
}

TimeGrid time_grid(const SolverConfig& cfg) {
  if (cfg.T == 0.0) return {};
  TimeGrid g;
  g.samples = cfg.samples;
  const double interval = cfg.T / cfg.samples;
  g.steps_per_sample = std::max(1, static_cast<int>(std::ceil(interval / target_dt(cfg) - 1e-9)));
  g.dt = interval / g.steps_per_sample;
  return g;
}

namespace {

void dissipate(PlaneField& f, double nu, double alpha, double dt) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto [a, b] = f.mode(i);
    const auto q = a * a + b * b;
    if (q == 0) continue;
    f[i] *= std::exp(-nu * dt * std::pow(static_cast<double>(q), alpha));
  }
}

void guard_step(const SpectralField& v, double dt, const SolverConfig& cfg) {
  const double h1 = hs_norm(v, 1.0);
  if (h1 * dt > cfg.cfl_limit) {
    throw StepRejected("step rejected: |v|_H1 * dt = " + std::to_string(h1 * dt) + " exceeds " +
                       std::to_string(cfg.cfl_limit));
  }
}

/// v_{n+1} = E(v + dt/2 k1) + dt/2 k2 with k2 evaluated at E(v + dt k1);
/// Euler variant v_{n+1} = E(v + dt k1).
template <class State, class Nonlinear, class Linear>
State integrating_factor_step(const State& v, double t, double dt, Scheme scheme, Nonlinear&& nonlinear,
                              Linear&& linear) {
  const State k1 = nonlinear(t, v);
  if (scheme == Scheme::if_euler) {
    State a = v;
    a.axpy(dt, k1);
    return linear(std::move(a));
  }
  State a = v;
  a.axpy(dt, k1);
  const State k2 = nonlinear(t + dt, linear(std::move(a)));
  State b = v;
  b.axpy(0.5 * dt, k1);
  State out = linear(std::move(b));
  out.axpy(0.5 * dt, k2);
  return out;
}

struct SplitState {
  PlaneField w, b3;
  SpectralField osc;
  void axpy(cplx s, const SplitState& o) {
    w.axpy(s, o.w);
    b3.axpy(s, o.b3);
    osc.axpy(s, o.osc);
  }
};

SpectralField embed_bar(const std::array<PlaneField, 2>& bar_h, const PlaneField& bar_3) {
  SplitField s;
  s.trunc = bar_3.trunc();
  s.bar_h = bar_h;
  s.bar_3 = bar_3;
  s.osc = SpectralField(s.trunc);
  SpectralField f = reassemble(s);
  f.set_flags(kDivergenceFree | kMeanZero);
  return f;
}

SplitState split_tendency(const SplitState& s, const ResonantInteractions& R) {
  const auto uh = biot_savart(s.w);
  SplitState out;
  out.w = advect_scalar_2d(uh[0], uh[1], s.w);
  out.b3 = advect_scalar_2d(uh[0], uh[1], s.b3);
  for (auto& c : out.w.coeffs()) c = -c;
  for (auto& c : out.b3.coeffs()) c = -c;
  const SpectralField ubar = embed_bar(uh, s.b3);
  SpectralField x = bilinear_resonant(ubar, s.osc, R);
  x += bilinear_resonant(s.osc, ubar, R);
  x += bilinear_resonant(s.osc, s.osc, R);
  out.osc = osc_part(x);
  out.osc *= -1.0;
  return out;
}

}  // namespace

PlaneField vorticity(const std::array<PlaneField, 2>& bar_h) {
  PlaneField w(bar_h[0].trunc());
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto [n1, n2] = w.mode(i);
    w[i] = I * static_cast<double>(n1) * bar_h[1][i] - I * static_cast<double>(n2) * bar_h[0][i];
  }
  return w;
}

std::array<PlaneField, 2> biot_savart(const PlaneField& w) {
  std::array<PlaneField, 2> u{PlaneField(w.trunc()), PlaneField(w.trunc())};
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto [n1, n2] = w.mode(i);
    const auto q = static_cast<double>(n1 * n1 + n2 * n2);
    if (q == 0.0) continue;
    u[0][i] = I * static_cast<double>(n2) * w[i] / q;
    u[1][i] = -I * static_cast<double>(n1) * w[i] / q;
  }
  return u;
}

SpectralField step_rotated(const SpectralField& v, double t, double dt, const SolverConfig& cfg) {
  guard_step(v, dt, cfg);
  const auto nonlinear = [&](double s, const SpectralField& x) {
    SpectralField b = bilinear_full(cfg.omega * s, x, x);
    b *= -1.0;
    return b;
  };
  const auto linear = [&](SpectralField x) {
    apply_dissipation(x, cfg.nu, cfg.alpha, dt);
    return x;
  };
  SpectralField out = integrating_factor_step(v, t, dt, cfg.scheme, nonlinear, linear);
  out.set_flags(v.flags());
  return out;
}

SpectralField step_original(const SpectralField& u, double t, double dt, const SolverConfig& cfg) {
  guard_step(u, dt, cfg);
  const auto nonlinear = [&](double, const SpectralField& x) {
    SpectralField b = bilinear_full(0.0, x, x);
    b *= -1.0;
    return b;
  };
  const auto linear = [&](SpectralField x) {
    apply_dissipation(x, cfg.nu, cfg.alpha, dt);
    return cfg.omega == 0.0 ? x : poincare_propagate(x, cfg.omega * dt);
  };
  SpectralField out = integrating_factor_step(u, t, dt, cfg.scheme, nonlinear, linear);
  out.set_flags(u.flags());
  return out;
}

SpectralField step_limit(const SpectralField& U, double dt, const SolverConfig& cfg, const ResonantInteractions* R) {
  if (!R) throw ConfigError("triads", "limit system needs a resonant set");
  guard_step(U, dt, cfg);
  const auto nonlinear = [&](double, const SpectralField& x) {
    SpectralField b = bilinear_resonant(x, x, *R);
    b *= -1.0;
    return b;
  };
  const auto linear = [&](SpectralField x) {
    apply_dissipation(x, cfg.nu, cfg.alpha, dt);
    return x;
  };
  SpectralField out = integrating_factor_step(U, 0.0, dt, cfg.scheme, nonlinear, linear);
  out.set_flags(U.flags());
  return out;
}

SplitField step_split(const SplitField& s, double dt, const SolverConfig& cfg, const ResonantInteractions* R) {
  if (!R) throw ConfigError("triads", "split system needs a resonant set");
  guard_step(reassemble(s), dt, cfg);
  SplitState x{vorticity(s.bar_h), s.bar_3, s.osc};
  const auto nonlinear = [&](double, const SplitState& y) { return split_tendency(y, *R); };
  const auto linear = [&](SplitState y) {
    dissipate(y.w, cfg.nu, cfg.alpha, dt);
    dissipate(y.b3, cfg.nu, cfg.alpha, dt);
    apply_dissipation(y.osc, cfg.nu, cfg.alpha, dt);
    return y;
  };
  const SplitState next = integrating_factor_step(x, 0.0, dt, cfg.scheme, nonlinear, linear);
  SplitField out;
  out.trunc = s.trunc;
  out.bar_h = biot_savart(next.w);
  // The horizontal mean is invisible to the vorticity; carry it over unchanged.
  const std::size_t zero = out.bar_h[0].index(0, 0);
  out.bar_h[0][zero] = s.bar_h[0][zero];
  out.bar_h[1][zero] = s.bar_h[1][zero];
  out.bar_3 = next.b3;
  out.osc = next.osc;
  out.osc.set_flags(s.osc.flags());
  return out;
}

EnergyRow energy_row(double t, const SpectralField& u, double alpha) {
  EnergyRow r;
  r.t = t;
  r.l2 = hs_norm(u, 0.0);
  r.h1 = hs_norm(u, 1.0);
  r.h1a = hs_norm(u, 1.0 + alpha);
  const SplitField s = split_bar_osc(u);
  r.bar_h_h1 = std::hypot(hs_norm(s.bar_h[0], 1.0), hs_norm(s.bar_h[1], 1.0));
  r.bar3_h1 = hs_norm(s.bar_3, 1.0);
  r.osc_h1 = hs_norm(s.osc, 1.0);
  return r;
}

void EnergyLog::write_csv(std::ostream& os) const {
  os << "t,l2,h1,h1a,bar_h_h1,bar3_h1,osc_h1,diss_acc\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9f,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", r.t, r.l2, r.h1, r.h1a,
                  r.bar_h_h1, r.bar3_h1, r.osc_h1, r.diss_acc);
    os << buf;
  }
}

namespace {

bool all_finite(const SpectralField& f) {
  for (const auto& v : f.coeffs()) {
    for (const auto& c : v) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
  }
  return true;
}

}  // namespace

RunResult run(const SolverConfig& cfg, const SpectralField& u0, std::shared_ptr<const ResonantInteractions> R,
              const RunHooks& hooks) {
  cfg.validate();
  if (u0.trunc() != cfg.N) throw ConfigError("N", "initial field has truncation " + std::to_string(u0.trunc()));
  require_divergence_free(u0, cfg.drift_limit);
  const bool needs_triads = cfg.system == SystemKind::limit || cfg.system == SystemKind::split;
  if (needs_triads && !R) R = resonant_interactions(cfg.N);
  if (R && R->trunc() != cfg.N) throw ConfigError("N", "resonant set truncation does not match");
  const bool monitor_hermitian = hermitian_defect(u0) <= cfg.drift_limit;

  RunResult res;
  res.grid = time_grid(cfg);
  const double dt = res.grid.dt;
  SpectralField u = u0;
  SplitField split;
  if (cfg.system == SystemKind::split) split = split_bar_osc(u0);

  EnergyRow row = energy_row(0.0, u, cfg.alpha);
  double prev_rate = cfg.nu * row.h1a * row.h1a;
  double diss = 0.0;
  res.log.rows.push_back(row);
  res.samples.push_back({0.0, u});
  if (hooks.on_step) hooks.on_step(0.0, u);
  if (hooks.on_sample) hooks.on_sample(res.samples.back());

  int n = 0;
  for (int i = 1; i <= res.grid.samples; ++i) {
    for (int s = 0; s < res.grid.steps_per_sample; ++s, ++n) {
      const double t = n * dt;
      switch (cfg.system) {
        case SystemKind::rotated: u = step_rotated(u, t, dt, cfg); break;
        case SystemKind::original: u = step_original(u, t, dt, cfg); break;
        case SystemKind::limit: u = step_limit(u, dt, cfg, R.get()); break;
        case SystemKind::split:
          split = step_split(split, dt, cfg, R.get());
          u = reassemble(split);
          u.set_flags(u0.flags());
          break;
      }
      if (!all_finite(u)) throw SolverBreakdown("non-finite coefficients at t = " + std::to_string(t + dt));
      const double div = divergence_defect(u);
      res.max_divergence_drift = std::max(res.max_divergence_drift, div);
      if (div > cfg.drift_limit) throw SolverBreakdown("divergence drift " + std::to_string(div));
      if (monitor_hermitian) {
        const double herm = hermitian_defect(u);
        res.max_hermitian_drift = std::max(res.max_hermitian_drift, herm);
        if (herm > cfg.drift_limit) throw SolverBreakdown("Hermitian symmetry drift " + std::to_string(herm));
      }
      const double h1a = hs_norm(u, 1.0 + cfg.alpha);
      const double rate = cfg.nu * h1a * h1a;
      diss += 0.5 * dt * (prev_rate + rate);
      prev_rate = rate;
      if (hooks.on_step) hooks.on_step((n + 1) * dt, u);
    }
    const double t = cfg.T * i / res.grid.samples;
    row = energy_row(t, u, cfg.alpha);
    row.diss_acc = diss;
    res.log.rows.push_back(row);
    res.samples.push_back({t, u});
    if (hooks.on_sample) hooks.on_sample(res.samples.back());
  }
  res.final_state = u;
  return res;
}

std::vector<ConvergenceRow> convergence_study(const SpectralField& u0, const SolverConfig& cfg,
                                              const std::vector<double>& omegas,
                                              std::shared_ptr<const ResonantInteractions> R) {
  if (omegas.empty()) throw ConfigError("omega", "empty omega list");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] < 0.0 || (i > 0 && omegas[i] <= omegas[i - 1])) {
      throw ConfigError("omega", "omega list must be ascending and non-negative");
    }
  }
  if (!R) R = resonant_interactions(cfg.N);
  SolverConfig lim = cfg;
  lim.system = SystemKind::limit;
  const RunResult limit_run = run(lim, u0, R);

  std::vector<ConvergenceRow> rows(omegas.size());
  std::vector<std::exception_ptr> errors(omegas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    try {
      const auto start = std::chrono::steady_clock::now();
      SolverConfig rot = cfg;
      rot.system = SystemKind::rotated;
      rot.omega = omegas[i];
      const RunResult r = run(rot, u0);
      double sup = 0.0;
      for (std::size_t k = 0; k < r.samples.size(); ++k) {
        sup = std::max(sup, hs_norm(r.samples[k].field - limit_run.samples[k].field, 1.0));
      }
      rows[i] = {omegas[i], sup, r.grid.dt,
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "omega,sup_h1_diff,dt,wallclock\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6g,%.12e,%.12e,%.3f\n", r.omega, r.sup_h1_diff, r.dt, r.wallclock);
    os << buf;
  }
}

}  // namespace rotres
