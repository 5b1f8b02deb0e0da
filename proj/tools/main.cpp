#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "artifacts.hpp"
#include "config.hpp"
#include "mindisp/diagnostics.hpp"
#include "mindisp/parallel.hpp"

namespace {

using namespace mindisp;
using namespace mindisp::tools;

std::string resolve_out_dir(const std::string& flag_value,
                            const KVConfig& cfg) {
  if (!flag_value.empty()) return flag_value;
  if (cfg.has("out_dir")) return cfg.get("out_dir");
  if (const char* env = std::getenv("MINDISP_OUT_DIR")) return env;
  return "out";
}

int cmd_run(const std::string& config_path, const std::string& out_flag,
            std::int64_t seed_flag, int threads, bool dry_run) {
  KVConfig cfg = KVConfig::load(config_path);
  Experiment exp = Experiment::from_config(cfg);
  if (seed_flag >= 0) {
    exp.descent.seed = static_cast<std::uint64_t>(seed_flag);
    exp.echo["seed"] = std::to_string(exp.descent.seed);
  }
  const std::string out_dir = resolve_out_dir(out_flag, cfg);
  par::set_max_threads(threads);

  if (dry_run) {
    std::cout << "config ok: " << config_path << "\n";
    std::cout << "model=" << exp.model_name << " cost=" << exp.cost_name
              << " state_dim=" << exp.model.state_dim
              << " control_dim=" << exp.model.control_dim << "\n";
    std::cout << "T=" << exp.grid.horizon() << " K=" << exp.grid.intervals()
              << " substeps=" << exp.grid.substeps_per_knot << "\n";
    std::cout << "N=" << exp.descent.adjoint_paths
              << " M=" << exp.descent.synthesis_particles
              << " n_eval=" << exp.descent.eval_samples
              << " eps=" << exp.descent.tolerance
              << " max_iters=" << exp.descent.max_iters
              << " seed=" << exp.descent.seed << "\n";
    std::cout << "out_dir=" << out_dir << " (not written)\n";
    return 0;
  }

  const EnsembleControl initial =
      EnsembleControl::zeros(exp.grid, exp.model.control_dim);
  const DescentReport report = run_descent(
      exp.model, exp.grid, exp.cost, exp.space, exp.descent, initial,
      [](const IterationRecord& rec) {
        std::cerr << "[iter] " << rec.iteration << " cost=" << rec.cost
                  << " stderr=" << rec.std_error
                  << " elapsed=" << rec.elapsed_s << "s\n";
      });
  write_artifacts(out_dir, exp, initial, report);
  std::cerr << "[done] best cost " << report.best_cost << " (iteration "
            << report.best_iteration << ") -> " << out_dir << "\n";
  return 0;
}

int cmd_diagnose(const std::string& config_path, const std::string& out_flag,
                 std::int64_t seed_flag, int threads) {
  KVConfig cfg = KVConfig::load(config_path);
  par::set_max_threads(threads);
  std::uint64_t seed = cfg.get_u64("seed", 0);
  if (seed_flag >= 0) seed = static_cast<std::uint64_t>(seed_flag);
  const std::string out_dir = resolve_out_dir(out_flag, cfg);
  const double sigma = cfg.get_double("diag.sigma_factor", 3.0);

  std::vector<CheckResult> checks;
  checks.push_back(
      feynman_kac_check(cfg.get_int("diag.N", 10000), seed, sigma));
  for (auto& c : duality_check(cfg.get_int("diag.duality.N", 1000),
                               cfg.get_int("diag.duality.M", 1000), seed,
                               {1, 2, 3, 4, 5}, sigma)) {
    checks.push_back(std::move(c));
  }
  checks.push_back(increment_check(cfg.get_int("diag.increment.n_direct", 10000),
                                   cfg.get_int("diag.increment.n_inner", 400),
                                   cfg.get_int("diag.increment.particles", 200),
                                   seed, sigma));
  checks.push_back(
      trace_covariance_check(cfg.get_int("diag.moment.ensembles", 100), seed));

  bool all_pass = true;
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["config"] = cfg.values();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    arr.push_back({{"name", c.name},
                   {"measured", c.measured},
                   {"reference", c.reference},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
              << "  measured=" << c.measured << " reference=" << c.reference
              << " tolerance=" << c.tolerance << "\n";
  }
  j["checks"] = arr;
  j["pass"] = all_pass;

  std::filesystem::create_directories(out_dir);
  std::ofstream out(std::filesystem::path(out_dir) / "diagnostics.json",
                    std::ios::binary);
  out << j.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mindisp: particle-based minimum-dispersion control of stochastic "
      "differential equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  int threads = 0;
  bool dry_run = false;

  auto* run = app.add_subcommand("run", "run a descent experiment");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--threads", threads, "worker threads (0 = auto)");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--dry-run", dry_run, "validate config and exit");

  auto* diag = app.add_subcommand("diagnose", "run the oracle check suite");
  diag->add_option("config", config_path, "config file")->required();
  diag->add_option("--seed", seed, "override the config seed");
  diag->add_option("--threads", threads, "worker threads (0 = auto)");
  diag->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run))
      return cmd_run(config_path, out_dir, seed, threads, dry_run);
    return cmd_diagnose(config_path, out_dir, seed, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
