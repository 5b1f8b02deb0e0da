#include <doctest.h>

#include <cmath>

#include "mindisp/descent.hpp"
#include "mindisp/models.hpp"
#include "mindisp/parallel.hpp"

using namespace mindisp;

namespace {

CostFunction square_cost() {
  MomentIndex idx;
  idx.alpha = Eigen::VectorXi::Constant(1, 2);
  idx.target = Vec::Zero(1);
  return central_moment_cost(idx);
}

DescentConfig small_config() {
  DescentConfig cfg;
  cfg.adjoint_paths = 60;
  cfg.synthesis_particles = 1;
  cfg.eval_samples = 400;
  cfg.max_iters = 3;
  cfg.patience = 3;
  cfg.seed = 4;
  return cfg;
}

}  // namespace

TEST_CASE("config validation rejects out-of-range parameters") {
  DescentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.adjoint_paths = 0;
  CHECK_THROWS(cfg.validate());
  cfg = DescentConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS(cfg.validate());
  cfg = DescentConfig{};
  cfg.fd_step = 0.0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("evaluating a deterministic model gives the exact cost") {
  // sigma = 0, u = 0: X_T = e^{aT} x0 exactly (up to Euler bias).
  const ModelDefinition model = controlled_linear_model(0.2, 1.0, 0.0, 1.0);
  const TimeGrid grid = TimeGrid::regular(1.0, 50, 5);
  const EnsembleControl u = EnsembleControl::zeros(grid, 1);
  const auto res = evaluate_cost(model, grid, u, square_cost(), 20, 1);
  CHECK(res.cost == doctest::Approx(std::exp(0.4)).epsilon(1e-2));
  CHECK(res.std_error < 1e-12);  // identical paths up to accumulation rounding
}

TEST_CASE("cost evaluation is seed-deterministic and tag-separated") {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(1.0, 10, 5);
  const EnsembleControl u = EnsembleControl::zeros(grid, 4);
  const auto a = evaluate_cost(model, grid, u, spike_cost(1), 200, 5, 1);
  const auto b = evaluate_cost(model, grid, u, spike_cost(1), 200, 5, 1);
  const auto c = evaluate_cost(model, grid, u, spike_cost(1), 200, 5, 2);
  CHECK(a.cost == b.cost);
  CHECK(a.cost != c.cost);
}

TEST_CASE("one synthesis sweep steers the linear model toward the target") {
  // Noise-free dX = w dt, x0 = 1, cost x^2: the synthesis particle decays
  // geometrically toward 0 but stays positive, grad p = 2x > 0 throughout,
  // so every knot minimizer -b/(2 lambda) must push left.
  const ModelDefinition model = controlled_linear_model(0.0, 1.0, 0.0, 1.0);
  const TimeGrid grid = TimeGrid::regular(1.0, 10, 5);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 1);
  const ControlSpace space = ControlSpace::penalty(1, 0.5);

  const EnsembleControl u1 =
      ks_synthesize(model, grid, u0, square_cost(), space, small_config(), 1);
  REQUIRE(u1.coeffs.rows() == grid.intervals());
  for (int k = 0; k < grid.intervals(); ++k) CHECK(u1.coeffs(k, 0) < 0.0);
}

TEST_CASE("descent on the linear model beats the uncontrolled cost") {
  const ModelDefinition model = controlled_linear_model(0.3, 1.0, 0.5, 1.0);
  const TimeGrid grid = TimeGrid::regular(1.0, 10, 5);
  const ControlSpace space = ControlSpace::penalty(1, 0.5);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 1);

  const auto report = run_descent(model, grid, square_cost(), space,
                                  small_config(), u0);
  REQUIRE(report.trace.size() >= 2);
  const double uncontrolled = report.trace.front().cost;
  CHECK(report.best_cost < 0.5 * uncontrolled);
  CHECK(report.best_cost <= report.trace.back().cost);
}

TEST_CASE("report bookkeeping is consistent") {
  const ModelDefinition model = controlled_linear_model(0.0, 1.0, 0.3, 1.0);
  const TimeGrid grid = TimeGrid::regular(1.0, 5, 5);
  const ControlSpace space = ControlSpace::penalty(1, 1.0);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 1);

  int progress_calls = 0;
  const auto report =
      run_descent(model, grid, square_cost(), space, small_config(), u0,
                  [&](const IterationRecord&) { ++progress_calls; });
  CHECK(report.trace.size() == report.controls.size());
  CHECK(progress_calls == static_cast<int>(report.trace.size()));
  CHECK(report.iterations ==
        report.trace.back().iteration);
  double best = report.trace.front().cost;
  for (const auto& rec : report.trace) best = std::min(best, rec.cost);
  CHECK(report.best_cost == best);
  CHECK(report.controls[report.best_iteration] == report.best_control);
  CHECK(report.wall_time_s >= 0.0);
}

TEST_CASE("the whole descent is bit-identical across thread counts") {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(1.0, 5, 5);
  const ControlSpace space = ControlSpace::penalty(4, 0.7);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 4);
  DescentConfig cfg = small_config();
  cfg.max_iters = 2;
  cfg.eval_samples = 100;

  par::set_max_threads(1);
  const auto serial = run_descent(model, grid, spike_cost(1), space, cfg, u0);
  par::set_max_threads(3);
  const auto threaded = run_descent(model, grid, spike_cost(1), space, cfg, u0);
  par::set_max_threads(1);

  REQUIRE(serial.trace.size() == threaded.trace.size());
  for (std::size_t i = 0; i < serial.trace.size(); ++i) {
    CHECK(serial.trace[i].cost == threaded.trace[i].cost);
    CHECK(serial.controls[i] == threaded.controls[i]);
  }
  CHECK(serial.best_control == threaded.best_control);
}
