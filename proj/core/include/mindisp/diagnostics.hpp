#pragma once

#include <string>
#include <vector>

#include "mindisp/sde.hpp"

namespace mindisp {

// One verification check: |measured - reference| must stay below tolerance.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Feynman-Kac value oracle on the Brownian model (beta = 0.05, T = 6,
// l(y) = y^2): estimate_p(0, 1) against the heat-kernel value 1.6.
CheckResult feynman_kac_check(int n_paths, std::uint64_t seed,
                              double sigma_factor = 3.0);

// <mu_t, p_t> - <mu_0, p_0> on the Brownian model at the given interior
// times; each defect must vanish within sigma_factor paired std errors.
std::vector<CheckResult> duality_check(int n_paths, int n_particles,
                                       std::uint64_t seed,
                                       std::vector<double> times = {1, 2, 3, 4,
                                                                    5},
                                       double sigma_factor = 3.0);

// Exact increment representation on the controlled linear model with two
// constant controls: direct Delta J vs the Hamiltonian time integral against
// the synthesized ensemble, within sigma_factor combined std errors.
CheckResult increment_check(int n_direct, int n_inner, int n_particles,
                            std::uint64_t seed, double sigma_factor = 3.0);

// Pairwise trace-covariance formula against the biased sample-covariance
// trace on random ensembles; exact algebraic identity, tolerance 1e-12.
CheckResult trace_covariance_check(int n_ensembles, std::uint64_t seed);

}  // namespace mindisp
