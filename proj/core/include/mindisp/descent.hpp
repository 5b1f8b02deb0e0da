#pragma once

#include <functional>
#include <vector>

#include "mindisp/adjoint.hpp"
#include "mindisp/costs.hpp"
#include "mindisp/hamiltonian.hpp"
#include "mindisp/sde.hpp"

namespace mindisp {

struct DescentConfig {
  int adjoint_paths = 100;      // N: Feynman-Kac paths per gradient stencil
  int synthesis_particles = 1;  // M: particles carrying the empirical law
  double tolerance = 1e-2;      // epsilon on the best-so-far cost decrease
  int max_iters = 10;
  int patience = 3;        // consecutive non-improving iterations allowed
  int eval_samples = 1000; // independent test paths per cost evaluation
  std::uint64_t seed = 0;
  double fd_step = 1e-3;   // h_scale for adjoint gradient stencils

  void validate() const;
};

struct EvalResult {
  double cost = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo test cost: average terminal cost over n_eval independent paths
// from independent initial draws. `tag` separates eval noise across
// iterations.
EvalResult evaluate_cost(const ModelDefinition& model, const TimeGrid& grid,
                         const EnsembleControl& control,
                         const CostFunction& cost, int n_eval,
                         std::uint64_t seed, std::uint32_t tag = 0);

// One Krasovskii-Subbotin sweep: builds a new piecewise-constant control left
// to right. The M synthesis particles evolve under the partially built new
// control; adjoint gradients at their positions are estimated under
// ref_control; each knot value is the averaged-Hamiltonian minimizer.
EnsembleControl ks_synthesize(const ModelDefinition& model,
                              const TimeGrid& grid,
                              const EnsembleControl& ref_control,
                              const CostFunction& cost,
                              const ControlSpace& space,
                              const DescentConfig& cfg,
                              std::uint32_t iteration);

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double std_error = 0.0;
  double elapsed_s = 0.0;
};

struct DescentReport {
  std::vector<IterationRecord> trace;  // entry 0 is the initial control
  std::vector<Mat> controls;           // control snapshot per trace entry
  Mat best_control;
  double best_cost = 0.0;
  double best_std_error = 0.0;
  int best_iteration = 0;
  int iterations = 0;
  double wall_time_s = 0.0;
};

using ProgressFn = std::function<void(const IterationRecord&)>;

// The outer descent loop: iterate u^{k+1} = ks_synthesize(ref = u^k),
// evaluate the test cost each iteration, stop on tolerance/patience/budget.
// Returns the best-cost control seen; the approximate loop is not monotone,
// so the last iterate may be worse.
DescentReport run_descent(const ModelDefinition& model, const TimeGrid& grid,
                          const CostFunction& cost, const ControlSpace& space,
                          const DescentConfig& cfg,
                          const EnsembleControl& initial_control,
                          const ProgressFn& progress = {});

}  // namespace mindisp
