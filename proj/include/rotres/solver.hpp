// Integrating-factor time stepping for the rotating system in the original
// and rotated frames, the resonant limit equation and its bar/osc split.
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "rotres/operators.hpp"

namespace rotres {

enum class Scheme { if_rk2, if_euler };
enum class SystemKind { original, rotated, limit, split };

std::string to_string(Scheme s);
std::string to_string(SystemKind s);

/// Invalid configuration; key() names the offending setting.
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string key, const std::string& msg) : InvalidInput(key + ": " + msg), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct StepRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// NaN, blow-up or invariant drift during a run.
struct SolverBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  double nu = 1.0;
  double alpha = 1.0;
  double omega = 0.0;
  int N = 8;
  double dt = 1e-3;
  double T = 1.0;
  Scheme scheme = Scheme::if_rk2;
  SystemKind system = SystemKind::rotated;
  bool dealias = true;
  /// Keep dt as given instead of capping it at 0.1/|omega| for rotating systems.
  bool allow_large_dt = false;
  /// A step is rejected when |v|_H1 * dt exceeds this.
  double cfl_limit = 1.0;
  /// Number of equal sample intervals on [0, T]; every sample time is hit exactly.
  int samples = 10;
  /// Divergence and Hermitian drift allowed during run().
  double drift_limit = 1e-10;

  void validate() const;
};

/// min(dt, 0.1/max(1,|omega|)) for the original and rotated systems, dt otherwise.
double target_dt(const SolverConfig& cfg);

struct TimeGrid {
  int samples = 0;
  int steps_per_sample = 0;
  double dt = 0.0;
  int steps() const { return samples * steps_per_sample; }
};

TimeGrid time_grid(const SolverConfig& cfg);

SpectralField step_rotated(const SpectralField& v, double t, double dt, const SolverConfig& cfg);
SpectralField step_original(const SpectralField& u, double t, double dt, const SolverConfig& cfg);
/// Throws ConfigError when R is null.
SpectralField step_limit(const SpectralField& U, double dt, const SolverConfig& cfg, const ResonantInteractions* R);
SplitField step_split(const SplitField& s, double dt, const SolverConfig& cfg, const ResonantInteractions* R);

/// 2D vorticity of the horizontal bar velocity, and its inverse (Biot-Savart).
PlaneField vorticity(const std::array<PlaneField, 2>& bar_h);
std::array<PlaneField, 2> biot_savart(const PlaneField& w);

struct EnergyRow {
  double t = 0.0;
  double l2 = 0.0, h1 = 0.0, h1a = 0.0;
  double bar_h_h1 = 0.0, bar3_h1 = 0.0, osc_h1 = 0.0;
  double diss_acc = 0.0;  // nu * int_0^t |u|^2_{H^{1+alpha}}, trapezoid rule
};

struct EnergyLog {
  std::vector<EnergyRow> rows;
  void write_csv(std::ostream& os) const;
};

EnergyRow energy_row(double t, const SpectralField& u, double alpha);

struct Snapshot {
  double t = 0.0;
  SpectralField field;
};

struct RunResult {
  SpectralField final_state;
  EnergyLog log;
  std::vector<Snapshot> samples;  // t = 0 and each sample time
  TimeGrid grid;
  double max_divergence_drift = 0.0;
  double max_hermitian_drift = 0.0;
};

struct RunHooks {
  std::function<void(double, const SpectralField&)> on_step;  // after every step, and at t = 0
  std::function<void(const Snapshot&)> on_sample;
};

/// Fixed-step integration of cfg.system from u0 to cfg.T. R is used by the
/// limit and split systems; when null the in-memory cache for cfg.N is used.
RunResult run(const SolverConfig& cfg, const SpectralField& u0, std::shared_ptr<const ResonantInteractions> R = nullptr,
              const RunHooks& hooks = {});

struct ConvergenceRow {
  double omega = 0.0;
  double sup_h1_diff = 0.0;
  double dt = 0.0;
  double wallclock = 0.0;
};

/// For each omega: sup over sample times of |v - U|_H1, v from the rotated
/// system and U from the limit equation, both started at u0.
std::vector<ConvergenceRow> convergence_study(const SpectralField& u0, const SolverConfig& cfg,
                                              const std::vector<double>& omegas,
                                              std::shared_ptr<const ResonantInteractions> R = nullptr);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace rotres
