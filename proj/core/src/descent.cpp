#include "mindisp/descent.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "mindisp/parallel.hpp"

namespace mindisp {

void DescentConfig::validate() const {
  if (adjoint_paths < 1 || synthesis_particles < 1 || max_iters < 1 ||
      patience < 1 || eval_samples < 1)
    throw std::invalid_argument("descent counts must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be > 0");
}

EvalResult evaluate_cost(const ModelDefinition& model, const TimeGrid& grid,
                         const EnsembleControl& control,
                         const CostFunction& cost, int n_eval,
                         std::uint64_t seed, std::uint32_t tag) {
  if (n_eval < 1) throw std::invalid_argument("n_eval must be >= 1");
  std::vector<double> vals(n_eval);
  par::parallel_for(n_eval, [&](std::int64_t l) {
    GaussianStream init(seed, {StreamPurpose::CostEval, tag,
                               static_cast<std::uint64_t>(l), 0});
    const Vec x0 = model.initial_law(init);
    vals[l] = cost.eval(simulate_terminal(
        model, grid, control, 0.0, x0, seed,
        {StreamPurpose::CostEval, tag, static_cast<std::uint64_t>(l), 1}));
  });
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= n_eval;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  EvalResult res;
  res.cost = mean;
  res.std_error = n_eval > 1 ? std::sqrt(var / (n_eval - 1) / n_eval) : 0.0;
  return res;
}

EnsembleControl ks_synthesize(const ModelDefinition& model,
                              const TimeGrid& grid,
                              const EnsembleControl& ref_control,
                              const CostFunction& cost,
                              const ControlSpace& space,
                              const DescentConfig& cfg,
                              std::uint32_t iteration) {
  cfg.validate();
  const int K = grid.intervals();
  const int M = cfg.synthesis_particles;
  EnsembleControl next = EnsembleControl::zeros(grid, model.control_dim);

  // Particle states and their persistent path-noise streams.
  std::vector<Vec> states(M);
  std::vector<GaussianStream> path_noise;
  path_noise.reserve(M);
  for (int l = 0; l < M; ++l) {
    GaussianStream init(cfg.seed, {StreamPurpose::Synthesis, iteration,
                                   static_cast<std::uint64_t>(l), 0});
    states[l] = model.initial_law(init);
    path_noise.emplace_back(cfg.seed,
                            StreamId{StreamPurpose::Synthesis, iteration,
                                     static_cast<std::uint64_t>(l), 1});
    stats::add_path_segments(1);
  }

  std::vector<std::pair<Vec, Vec>> points(M);
  for (int k = 0; k < K; ++k) {
    if (k > 0) {
      for (int l = 0; l < M; ++l) {
        states[l] = advance(model, grid, next, grid.knots[k - 1],
                            grid.knots[k], std::move(states[l]), path_noise[l]);
      }
    }
    // One CRN block per knot, shared across the M particle stencils.
    const StreamId ns{StreamPurpose::Adjoint, iteration,
                      static_cast<std::uint64_t>(k) << 32, 0};
    for (int l = 0; l < M; ++l) {
      const AdjointEstimate est =
          estimate_grad_p(model, grid, ref_control, grid.knots[k], states[l],
                          cfg.adjoint_paths, cost, cfg.seed, ns, cfg.fd_step);
      points[l] = {states[l], est.gradient};
    }
    next.coeffs.row(k) =
        argmin_control(averaged_coeffs(model, grid.knots[k], points), space);
  }
  return next;
}

DescentReport run_descent(const ModelDefinition& model, const TimeGrid& grid,
                          const CostFunction& cost, const ControlSpace& space,
                          const DescentConfig& cfg,
                          const EnsembleControl& initial_control,
                          const ProgressFn& progress) {
  cfg.validate();
  const auto t_begin = std::chrono::steady_clock::now();
  const auto elapsed = [&t_begin] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_begin)
        .count();
  };

  DescentReport report;
  EnsembleControl current = initial_control;

  const auto record = [&](int iter, const EvalResult& eval) {
    IterationRecord rec{iter, eval.cost, eval.std_error, elapsed()};
    report.trace.push_back(rec);
    report.controls.push_back(current.coeffs);
    if (progress) progress(rec);
  };

  EvalResult eval = evaluate_cost(model, grid, current, cost, cfg.eval_samples,
                                  cfg.seed, 0);
  record(0, eval);
  report.best_control = current.coeffs;
  report.best_cost = eval.cost;
  report.best_std_error = eval.std_error;
  report.best_iteration = 0;

  int non_improving = 0;
  int iter = 0;
  while (iter < cfg.max_iters) {
    ++iter;
    EnsembleControl next = ks_synthesize(model, grid, current, cost, space,
                                         cfg, static_cast<std::uint32_t>(iter));
    const bool fixed_point = (next.coeffs == current.coeffs);
    current = std::move(next);
    eval = evaluate_cost(model, grid, current, cost, cfg.eval_samples,
                         cfg.seed, static_cast<std::uint32_t>(iter));
    record(iter, eval);

    const double decrease = report.best_cost - eval.cost;
    if (eval.cost < report.best_cost) {
      report.best_cost = eval.cost;
      report.best_std_error = eval.std_error;
      report.best_control = current.coeffs;
      report.best_iteration = iter;
    }
    if (decrease < cfg.tolerance) {
      if (++non_improving >= cfg.patience) break;
    } else {
      non_improving = 0;
    }
    // The synthesis map reproduced its own reference: further iterations are
    // identical.
    if (fixed_point) break;
  }
  report.iterations = iter;
  report.wall_time_s = elapsed();
  return report;
}

}  // namespace mindisp
