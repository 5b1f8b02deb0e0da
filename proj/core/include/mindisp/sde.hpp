#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mindisp/rng.hpp"

namespace mindisp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised when an Euler-Maruyama step produces a non-finite state.
struct IntegrationBlowup : std::runtime_error {
  IntegrationBlowup(double t_, Vec state_);
  double t;
  Vec state;
};

// Control knots t_0 = 0 < t_1 < ... < t_K = T with a fixed number of
// integration substeps per knot interval.
struct TimeGrid {
  std::vector<double> knots;
  int substeps_per_knot = 5;

  static TimeGrid regular(double horizon, int knots_per_unit_time,
                          int substeps = 5);

  int intervals() const { return static_cast<int>(knots.size()) - 1; }
  double horizon() const { return knots.back(); }
  double step(int k) const { return (knots[k + 1] - knots[k]) / substeps_per_knot; }
  void validate() const;
};

// Piecewise-constant coefficient vector u(t): row k applies on [t_k, t_{k+1}).
struct EnsembleControl {
  Mat coeffs;  // K x d

  static EnsembleControl zeros(const TimeGrid& grid, int control_dim);
  Eigen::Index intervals() const { return coeffs.rows(); }
  Eigen::Index dim() const { return coeffs.cols(); }
};

// A controlled SDE dX = f_t(X, w) dt + sigma_t(X) dW with a Markovian control
// value of predefined structure w(x) = sum_j xi_j(x) u_j(t).
struct ModelDefinition {
  int state_dim = 0;
  int noise_dim = 0;
  int value_dim = 0;    // dimension of the Markovian value w
  int control_dim = 0;  // number of feedback-basis coefficients u_j

  std::function<Vec(double, const Vec&, const Vec&)> drift;  // (t, x, w)
  std::function<Mat(double, const Vec&)> diffusion;          // (t, x) -> n x m
  std::vector<std::function<Vec(const Vec&)>> feedback_basis;
  std::function<Vec(GaussianStream&)> initial_law;

  // sum_j xi_j(x) u_j for a coefficient row u.
  Vec markov_value(const Vec& x, const Vec& u) const;
};

// Global step/path counters. Thread-safe; used for cost accounting only.
namespace stats {
void reset();
std::uint64_t em_steps();
std::uint64_t path_segments();
void add_em_steps(std::uint64_t n);
void add_path_segments(std::uint64_t n);
}  // namespace stats

// One explicit Euler-Maruyama update x + f dt + sigma dW.
Vec em_step(const ModelDefinition& model, double t, const Vec& x, const Vec& w,
            double dt, const Vec& dW);

// Advance x from t_a to t_b (both substep boundaries), drawing increments
// from `noise`. Control value is refreshed at every substep.
Vec advance(const ModelDefinition& model, const TimeGrid& grid,
            const EnsembleControl& control, double t_a, double t_b, Vec x,
            GaussianStream& noise);

using PathPoint = std::pair<double, Vec>;

// Full path from (t_start, x) to the horizon, one point per substep.
std::vector<PathPoint> simulate_path(const ModelDefinition& model,
                                     const TimeGrid& grid,
                                     const EnsembleControl& control,
                                     double t_start, const Vec& x,
                                     std::uint64_t seed, const StreamId& id);

// Terminal state only; the hot path for Feynman-Kac sampling.
Vec simulate_terminal(const ModelDefinition& model, const TimeGrid& grid,
                      const EnsembleControl& control, double t_start,
                      const Vec& x, std::uint64_t seed, const StreamId& id);

// M weighted samples of the law at one time.
struct ParticleEnsemble {
  Mat states;  // M x n
  int size() const { return static_cast<int>(states.rows()); }
};

// M independent paths from i.i.d. initial draws; returns the empirical
// ensemble at every knot time.
std::vector<ParticleEnsemble> sample_ensemble(const ModelDefinition& model,
                                              const TimeGrid& grid,
                                              const EnsembleControl& control,
                                              int M, std::uint64_t seed,
                                              std::uint32_t iteration = 0);

}  // namespace mindisp
