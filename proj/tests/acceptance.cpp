// Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria. Pass --cli <path> to the
// command-line binary so the artifact-determinism criterion can invoke it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mindisp/descent.hpp"
#include "mindisp/diagnostics.hpp"
#include "mindisp/hamiltonian.hpp"
#include "mindisp/models.hpp"
#include "mindisp/parallel.hpp"

using namespace mindisp;

namespace {

namespace fs = std::filesystem;

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("criterion %d (%s): %s  %s\n", criterion, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---- 1: Feynman-Kac value oracle ------------------------------------------

void criterion_1() {
  par::set_max_threads(1);
  const auto start = std::chrono::steady_clock::now();
  const CheckResult c = feynman_kac_check(10000, /*seed=*/1);
  const double runtime = now_seconds(start);
  par::set_max_threads(0);
  const bool pass = c.pass && runtime < 5.0;
  report(1, "feynman-kac oracle", pass,
         "value=" + fmt(c.measured) + " target=" + fmt(c.reference) +
             " tol(3se)=" + fmt(c.tolerance) + " runtime=" + fmt(runtime) +
             "s (budget 5s, single-threaded)");
}

// ---- 2: duality conservation -----------------------------------------------

void criterion_2() {
  const auto checks = duality_check(1000, 1000, /*seed=*/1);
  bool pass = checks.size() == 5;
  std::string detail;
  for (const auto& c : checks) {
    pass = pass && c.pass;
    if (!detail.empty()) detail += ", ";
    detail += fmt(c.measured) + "<=" + fmt(c.tolerance);
  }
  report(2, "duality conservation", pass, "defect vs 3se at t=1..5: " + detail);
}

// ---- 3: increment-formula exactness ----------------------------------------

void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  const CheckResult c = increment_check(10000, 400, 200, /*seed=*/1);
  const double runtime = now_seconds(start);
  const bool pass = c.pass && runtime < 60.0;
  report(3, "increment formula", pass,
         "direct=" + fmt(c.measured) + " integral=" + fmt(c.reference) +
             " tol(3se)=" + fmt(c.tolerance) + " runtime=" + fmt(runtime) +
             "s (budget 60s)");
}

// ---- 4: argmin against the grid oracle -------------------------------------

void criterion_4() {
  GaussianStream rng(4, {StreamPurpose::Diagnostic, 0, 0, 0});
  int penalty_ok = 0, box_ok = 0;
  const int trials = 1000;

  for (int trial = 0; trial < trials; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform() * 3.0);
    AffineHamiltonianCoeffs coeffs;
    coeffs.linear = Vec(d);
    for (int j = 0; j < d; ++j) coeffs.linear[j] = 6.0 * (rng.uniform() - 0.5);
    const double lambda = 0.5 + 1.5 * rng.uniform();

    const ControlSpace space = ControlSpace::penalty(d, lambda);
    const Vec u = argmin_control(coeffs, space);
    const auto objective = [&](const Vec& v) {
      return coeffs.linear.dot(v) + lambda * v.squaredNorm();
    };
    const int points = 81;  // spacing 0.1 on [-4, 4]
    const Vec u_grid = argmin_control_grid(objective, Vec::Constant(d, -4.0),
                                           Vec::Constant(d, 4.0), points);
    const double spacing = 8.0 / (points - 1);
    if ((u - u_grid).lpNorm<Eigen::Infinity>() <= 0.5 * spacing + 1e-12)
      ++penalty_ok;
  }

  for (int trial = 0; trial < trials; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform() * 3.0);
    Vec lo(d), hi(d);
    AffineHamiltonianCoeffs coeffs;
    coeffs.linear = Vec(d);
    for (int j = 0; j < d; ++j) {
      lo[j] = -2.0 * rng.uniform() - 0.1;
      hi[j] = 2.0 * rng.uniform() + 0.1;
      // exercise exact ties as well as generic slopes
      const double r = rng.uniform();
      coeffs.linear[j] = r < 0.1 ? 0.0 : 6.0 * (rng.uniform() - 0.5);
    }
    const ControlSpace space = ControlSpace::box(lo, hi);
    const Vec u = argmin_control(coeffs, space);
    // Linear objectives attain their box minimum at an endpoint (or anywhere
    // on a tie); certify by value against endpoint enumeration.
    double best = 0.0;
    for (int j = 0; j < d; ++j)
      best += std::min(coeffs.linear[j] * lo[j], coeffs.linear[j] * hi[j]);
    if (space.contains(u) &&
        std::abs(coeffs.linear.dot(u) - best) <= 1e-12)
      ++box_ok;
  }

  const bool pass = penalty_ok == trials && box_ok == trials;
  report(4, "hamiltonian argmin", pass,
         "penalty " + std::to_string(penalty_ok) + "/1000 within grid "
         "resolution, box " + std::to_string(box_ok) + "/1000 value-exact");
}

// ---- 5: trace-covariance identity ------------------------------------------

void criterion_5() {
  const CheckResult c = trace_covariance_check(100, /*seed=*/1);
  report(5, "trace-covariance identity", c.pass,
         "max |pairwise - covariance trace| = " + fmt(c.measured) +
             " tol=" + fmt(c.tolerance));
}

// ---- 6 and 7: the theta-neuron benchmark -----------------------------------

struct BenchmarkOutcome {
  std::vector<double> uncontrolled;
  std::vector<double> best;
};

BenchmarkOutcome run_theta_benchmark(int p) {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(6.0, 20, 5);
  const ControlSpace space = ControlSpace::penalty(4, 0.7);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 4);

  BenchmarkOutcome out;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    DescentConfig cfg;
    cfg.adjoint_paths = 100;
    cfg.synthesis_particles = 1;
    cfg.max_iters = 10;
    cfg.patience = 10;  // spend the full budget; best-so-far is scored
    cfg.eval_samples = 1000;
    cfg.seed = seed;
    const auto report =
        run_descent(model, grid, spike_cost(p), space, cfg, u0);
    out.uncontrolled.push_back(report.trace.front().cost);
    out.best.push_back(report.best_cost);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += " ";
    s += fmt(x);
  }
  return s;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double g_p1_baseline = 0.0;

void criterion_6() {
  const BenchmarkOutcome out = run_theta_benchmark(1);
  g_p1_baseline = mean(out.uncontrolled);

  bool in_band = true;
  for (double c : out.uncontrolled) in_band = in_band && c >= 1.9 && c <= 2.9;
  int hits = 0;
  for (double c : out.best) hits += c < 0.25 ? 1 : 0;

  const bool pass = in_band && hits >= 4;
  report(6, "theta benchmark p=1", pass,
         "uncontrolled [" + join(out.uncontrolled) + "] in [1.9,2.9]; best [" +
             join(out.best) + "] < 0.25 in " + std::to_string(hits) +
             "/5 seeds (need 4)");
}

void criterion_7() {
  const BenchmarkOutcome out = run_theta_benchmark(2);
  const double threshold = g_p1_baseline / 5.0;
  int hits = 0;
  for (double c : out.best) hits += c < threshold ? 1 : 0;

  const bool pass = hits >= 4;
  report(7, "theta benchmark p=2", pass,
         "best [" + join(out.best) + "] < baseline/5 = " + fmt(threshold) +
             " in " + std::to_string(hits) + "/5 seeds (need 4)");
}

// ---- 8: bit-identical artifacts --------------------------------------------

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(a))
    names.push_back(entry.path().filename().string());
  if (names.empty()) {
    why = "no artifacts written";
    return false;
  }
  for (const auto& name : names) {
    if (!fs::exists(b / name)) {
      why = name + " missing";
      return false;
    }
    if (read_bytes(a / name) != read_bytes(b / name)) {
      why = name + " differs";
      return false;
    }
  }
  return true;
}

void criterion_8(const std::string& cli) {
  if (cli.empty()) {
    report(8, "bit-identical artifacts", false,
           "no --cli path given; cannot invoke the command-line tool");
    return;
  }
  const fs::path work = fs::temp_directory_path() / "mindisp-acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  const fs::path cfg_path = work / "determinism.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "model = theta\ncost = spike\nspike.p = 1\nT = 1\n"
           "knots_per_unit = 10\nN = 30\nM = 1\nn_eval = 100\n"
           "max_iters = 2\npatience = 10\nlambda = 0.7\nseed = 3\n"
           "paths.bundle = 5\n";
  }

  const auto invoke = [&](const std::string& out, int threads) {
    const std::string cmd = "\"" + cli + "\" run \"" + cfg_path.string() +
                            "\" --out \"" + (work / out).string() +
                            "\" --threads " + std::to_string(threads) +
                            " 2> /dev/null";
    return std::system(cmd.c_str()) == 0;
  };

  bool pass = invoke("a", 1) && invoke("b", 1) && invoke("c", 4);
  std::string why = pass ? "" : "command-line run failed";
  if (pass) pass = dirs_identical(work / "a", work / "b", why);
  if (pass) pass = dirs_identical(work / "a", work / "c", why);

  std::string detail = pass ? "rerun and --threads 4 rerun byte-identical"
                            : why;
  report(8, "bit-identical artifacts", pass, detail);
}

// ---- 9: cost accounting ----------------------------------------------------

void criterion_9() {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(6.0, 20, 5);
  const ControlSpace space = ControlSpace::penalty(4, 0.7);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 4);
  DescentConfig cfg;
  cfg.adjoint_paths = 100;
  cfg.synthesis_particles = 1;
  cfg.seed = 1;

  stats::reset();
  ks_synthesize(model, grid, u0, spike_cost(1), space, cfg, 1);
  const double measured = static_cast<double>(stats::path_segments());
  const double predicted = 100.0 * 1.0 * grid.intervals() *
                           (2.0 * model.state_dim);  // N M K 2n
  const double ratio = measured / predicted;
  const bool pass = ratio <= 2.0 && ratio >= 0.5;
  report(9, "cost accounting", pass,
         "path segments per iteration " + fmt(measured) + " vs N*M*K*2n = " +
             fmt(predicted) + " (ratio " + fmt(ratio) + ", budget [0.5,2])");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }
  par::set_max_threads(0);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8(cli);
  criterion_9();

  std::printf("%s: %d/9 criteria passed\n",
              g_failures == 0 ? "ACCEPTED" : "REJECTED", 9 - g_failures);
  return g_failures;
}
