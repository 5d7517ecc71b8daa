// rotres: simulate, triads, pell, verify, converge.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rotres/config.hpp"
#include "rotres/pell.hpp"
#include "rotres/random_field.hpp"
#include "rotres/report.hpp"
#include "rotres/verify.hpp"

namespace fs = std::filesystem;
using namespace rotres;

namespace {

struct Common {
  std::string out;
  std::optional<std::uint64_t> seed;
  int shards = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : cfg.entries) j[k] = v;
  return j;
}

RunConfig load_with_overrides(const std::string& path, const Common& common) {
  RunConfig cfg = load_config(path);
  if (!common.out.empty()) cfg.out_dir = common.out;
  if (common.seed) cfg.seed = *common.seed;
  return cfg;
}

std::shared_ptr<const ResonantInteractions> cached_interactions(const RunConfig& cfg, Manifest& manifest) {
  bool built = false;
  const ResonantSet set = load_or_build_triads(cfg.out_dir, cfg.solver.N, &built);
  const auto path = triad_cache_path(cfg.out_dir, cfg.solver.N);
  if (built) {
    manifest.add_artifact(path, "triad-cache");
  } else {
    manifest.inputs.push_back(path.string());
  }
  manifest.summary["triad_cache"] = built ? "built" : "reused";
  return std::make_shared<const ResonantInteractions>(set, cfg.solver.N);
}

int cmd_simulate(const std::string& config_path, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig cfg = load_with_overrides(config_path, common);
  Manifest manifest("simulate");
  manifest.config = config_json(cfg);
  manifest.seed = cfg.seed;
  manifest.inputs.push_back(config_path);
  fs::create_directories(cfg.out_dir);

  std::shared_ptr<const ResonantInteractions> R;
  if (cfg.solver.system == SystemKind::limit || cfg.solver.system == SystemKind::split) {
    R = cached_interactions(cfg, manifest);
  }
  const SpectralField u0 = random_field(cfg.solver.N, cfg.seed, cfg.u0_h1);
  const CheckpointMeta meta0{cfg.solver.nu, cfg.solver.alpha, cfg.solver.omega, 0.0};

  RunHooks hooks;
  int sample_index = 0;
  if (cfg.checkpoint_every > 0) {
    hooks.on_sample = [&](const Snapshot& s) {
      if (sample_index++ % cfg.checkpoint_every != 0) return;
      CheckpointMeta m = meta0;
      m.t = s.t;
      char name[64];
      std::snprintf(name, sizeof name, "checkpoint_%05d.rotres", sample_index - 1);
      const auto bytes = encode_checkpoint(s.field, m);
      manifest.write_artifact(cfg.out_dir / name, {reinterpret_cast<const char*>(bytes.data()), bytes.size()},
                              "checkpoint");
    };
  }
  const RunResult res = run(cfg.solver, u0, R, hooks);

  std::ostringstream log;
  res.log.write_csv(log);
  manifest.write_artifact(cfg.out_dir / "energy.csv", log.str(), "energy-log");
  CheckpointMeta mf = meta0;
  mf.t = cfg.solver.T;
  const auto bytes = encode_checkpoint(res.final_state, mf);
  manifest.write_artifact(cfg.out_dir / "final.rotres", {reinterpret_cast<const char*>(bytes.data()), bytes.size()},
                          "checkpoint");
  manifest.summary["steps"] = res.grid.steps();
  manifest.summary["dt"] = res.grid.dt;
  manifest.summary["max_divergence_drift"] = res.max_divergence_drift;
  manifest.summary["max_hermitian_drift"] = res.max_hermitian_drift;
  manifest.wallclock_s = seconds_since(start);
  manifest.save(cfg.out_dir / "manifest.json");
  std::cout << "simulate: " << res.grid.steps() << " steps, final H1 " << res.log.rows.back().h1 << '\n';
  return 0;
}

int cmd_triads(const std::vector<std::int64_t>& Ls, const std::string& mode_name, const std::string& norm_name,
               bool list, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  if (Ls.empty()) throw InvalidInput("triads: no L given");
  EnumerationMode mode;
  if (mode_name == "nontrivial") mode = EnumerationMode::nontrivial_only;
  else if (mode_name == "all") mode = EnumerationMode::all_omega_zero;
  else throw InvalidInput("triads: unknown mode '" + mode_name + "'");
  TruncationNorm norm;
  if (norm_name == "euclidean") norm = TruncationNorm::euclidean;
  else if (norm_name == "cube") norm = TruncationNorm::cube;
  else throw InvalidInput("triads: unknown norm '" + norm_name + "'");

  const fs::path out = common.out.empty() ? fs::path(".") : fs::path(common.out);
  fs::create_directories(out);
  Manifest manifest("triads");
  manifest.config = {{"L", Ls}, {"mode", mode_name}, {"norm", norm_name}, {"shards", common.shards}};
  if (list) {
    for (const auto L : Ls) {
      const auto set = enumerate_resonant_triads(L, mode, norm, common.shards);
      std::ostringstream os;
      write_triads_csv(os, set);
      manifest.write_artifact(out / ("triads_L" + std::to_string(L) + ".csv"), os.str(), "triads");
      manifest.summary["count_L" + std::to_string(L)] = set.triads.size();
    }
  }
  std::vector<std::int64_t> sorted = Ls;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const auto rows = counting_census(sorted, common.shards);
  std::ostringstream os;
  write_census_csv(os, rows);
  manifest.write_artifact(out / "census.csv", os.str(), "census");
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.sup_count <= r.max_count_bound();
  manifest.pass = ok;
  manifest.wallclock_s = seconds_since(start);
  manifest.save(out / "manifest.json");
  std::cout << os.str();
  return ok ? 0 : 1;
}

int cmd_pell(int count, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  if (count < 1) throw InvalidInput("pell: --count must be >= 1");
  const fs::path out = common.out.empty() ? fs::path(".") : fs::path(common.out);
  fs::create_directories(out);
  std::vector<PellTriadRecord> records;
  bool ok = true;
  for (int j = 1; j <= count; ++j) {
    records.push_back(pell_triad(j));
    ok = ok && check_pell_record(records.back()).all();
  }
  ok = ok && curve_invariants_distinct(records);
  std::ostringstream os;
  write_pell_csv(os, records);
  Manifest manifest("pell");
  manifest.config = {{"count", count}};
  manifest.write_artifact(out / "pell.csv", os.str(), "pell");
  manifest.pass = ok;
  manifest.wallclock_s = seconds_since(start);
  manifest.save(out / "manifest.json");
  std::cout << os.str();
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, int trials, int N, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.seed = common.seed.value_or(1);
  opt.trials = trials;
  opt.N = N;
  const auto reports = run_verify_suite(suite, opt);
  nlohmann::json j = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : reports) {
    j.push_back(to_json(r));
    ok = ok && r.pass;
  }
  const fs::path out = common.out.empty() ? fs::path(".") : fs::path(common.out);
  fs::create_directories(out);
  Manifest manifest("verify");
  manifest.config = {{"suite", suite}, {"trials", trials}, {"N", N}};
  manifest.seed = opt.seed;
  manifest.write_artifact(out / ("verify_" + suite + ".json"), j.dump(2) + "\n", "verify-report");
  manifest.pass = ok;
  manifest.wallclock_s = seconds_since(start);
  manifest.save(out / "manifest.json");
  std::cout << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_converge(const std::string& config_path, const std::string& omega_list, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig cfg = load_with_overrides(config_path, common);
  const std::vector<double> omegas = omega_list.empty() ? cfg.omegas : parse_double_list("omegas", omega_list);
  if (omegas.empty()) throw ConfigError("omegas", "empty omega list");
  Manifest manifest("converge");
  manifest.config = config_json(cfg);
  manifest.config["omegas"] = omegas;
  manifest.seed = cfg.seed;
  manifest.inputs.push_back(config_path);
  fs::create_directories(cfg.out_dir);
  const auto R = cached_interactions(cfg, manifest);
  const SpectralField u0 = random_field(cfg.solver.N, cfg.seed, cfg.u0_h1);
  const auto rows = convergence_study(u0, cfg.solver, omegas, R);
  std::ostringstream os;
  write_convergence_csv(os, rows);
  manifest.write_artifact(cfg.out_dir / "converge.csv", os.str(), "convergence-table");
  manifest.wallclock_s = seconds_since(start);
  manifest.save(cfg.out_dir / "manifest.json");
  std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant triads and fast-rotation limits for the rotating fractional Navier-Stokes system"};
  app.require_subcommand(1);
  Common common;
  std::uint64_t seed = 0;
  app.add_option("--out", common.out, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config)");
  app.add_option("--shards", common.shards, "OpenMP shards for triad enumeration (0: default)")->check(CLI::NonNegativeNumber);

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "integrate one system from a seeded initial field");
  sim->add_option("--config", config_path, "key = value config file")->required();

  std::vector<std::int64_t> Ls;
  std::string mode = "nontrivial", norm = "euclidean";
  bool census_only = false;
  auto* tri = app.add_subcommand("triads", "enumerate resonant triads and the counting census");
  tri->add_option("--L", Ls, "truncation bound(s), comma separated")->required()->delimiter(',');
  tri->add_option("--mode", mode, "nontrivial | all")->capture_default_str();
  tri->add_option("--norm", norm, "euclidean | cube")->capture_default_str();
  tri->add_flag("--census-only", census_only, "skip the per-triad CSV listing");

  int count = 10;
  auto* pell = app.add_subcommand("pell", "the Pell family of nontrivial resonant triads");
  pell->add_option("--count", count, "number of records")->capture_default_str();

  std::string suite;
  int trials = -1, N = 8;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "cancellations | small-divisor | pell | trilinear | propagator")->required();
  ver->add_option("--trials", trials, "trial count (suite default when omitted)");
  ver->add_option("--N", N, "truncation")->capture_default_str();

  std::string omegas;
  auto* conv = app.add_subcommand("converge", "sup_t |v - U|_H1 against omega");
  conv->add_option("--config", config_path, "key = value config file")->required();
  conv->add_option("--omegas", omegas, "comma separated omega list (overrides the config)");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) common.seed = seed;

  try {
    if (*sim) return cmd_simulate(config_path, common);
    if (*tri) return cmd_triads(Ls, mode, norm, !census_only, common);
    if (*pell) return cmd_pell(count, common);
    if (*ver) return cmd_verify(suite, trials, N, common);
    if (*conv) return cmd_converge(config_path, omegas, common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
