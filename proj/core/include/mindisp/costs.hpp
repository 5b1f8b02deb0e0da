#pragma once

#include <functional>

#include "mindisp/sde.hpp"

namespace mindisp {

// Terminal cost with its spatial gradient. Gradients are analytic for the
// built-in costs; finite_difference_gradient wraps user-supplied ones.
struct CostFunction {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> gradient;
};

// Multi-index alpha and target point for a mixed central moment. alpha acts
// on the leading alpha.size() coordinates of the state.
struct MomentIndex {
  Eigen::VectorXi alpha;
  Vec target;

  int order() const { return alpha.sum(); }
};

// l(x) = prod_j (x_j - target_j)^alpha_j; its ensemble average is the
// empirical mixed central moment.
CostFunction central_moment_cost(const MomentIndex& idx);

// l(x) = sin(x_1)^{2p} + (cos(x_1) - 1)^{2p}, applied to the phase
// coordinate only. Vanishes exactly on the spiking phases 2*pi*k.
CostFunction spike_cost(int p);

// Extended process (X, Y): two independent copies of the base dynamics
// sharing one ensemble control, block-diagonal diffusion, initial blocks
// drawn independently from the base initial law. Turns mu-quadratic
// dispersion costs into plain terminal costs on the product space.
ModelDefinition doubled_model(const ModelDefinition& base);

// l(x, y) = 0.5 * ||x - y||^2 on a doubled state of base dimension n; its
// expectation over the doubled law equals the covariance trace of the base.
CostFunction doubled_spread_cost(int base_dim);

// (1 / 2M^2) sum_ij ||x_i - x_j||^2 == trace of the biased empirical
// covariance, exactly.
double trace_covariance(const ParticleEnsemble& samples);

// Central-difference gradient fallback for user-supplied costs.
CostFunction finite_difference_gradient(std::function<double(const Vec&)> eval,
                                        double h = 1e-5);

}  // namespace mindisp
