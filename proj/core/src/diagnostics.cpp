#include "mindisp/diagnostics.hpp"

#include <cmath>

#include "mindisp/adjoint.hpp"
#include "mindisp/costs.hpp"
#include "mindisp/descent.hpp"
#include "mindisp/hamiltonian.hpp"
#include "mindisp/models.hpp"
#include "mindisp/parallel.hpp"

namespace mindisp {

namespace {

CostFunction squared_cost() {
  CostFunction cost;
  cost.eval = [](const Vec& x) { return x[0] * x[0]; };
  cost.gradient = [](const Vec& x) { return Vec(Vec::Constant(1, 2.0 * x[0])); };
  return cost;
}

}  // namespace

CheckResult feynman_kac_check(int n_paths, std::uint64_t seed,
                              double sigma_factor) {
  const double beta = 0.05;
  const ModelDefinition model = brownian_model(beta, 1.0);
  const TimeGrid grid = TimeGrid::regular(6.0, 2, 5);
  const EnsembleControl u = EnsembleControl::zeros(grid, 0);

  const AdjointEstimate est =
      estimate_p(model, grid, u, 0.0, Vec::Constant(1, 1.0), n_paths,
                 squared_cost(), seed, {StreamPurpose::Adjoint, 0xF0u, 0, 0});
  CheckResult res;
  res.name = "feynman_kac_brownian";
  res.measured = est.value;
  res.reference = 1.0 + 2.0 * beta * 6.0;  // y^2 + 2 beta T
  res.tolerance = sigma_factor * std::max(est.std_error, 1e-12);
  res.pass = std::abs(res.measured - res.reference) <= res.tolerance;
  return res;
}

std::vector<CheckResult> duality_check(int n_paths, int n_particles,
                                       std::uint64_t seed,
                                       std::vector<double> times,
                                       double sigma_factor) {
  const ModelDefinition model = brownian_model(0.05, 0.0);
  const TimeGrid grid = TimeGrid::regular(6.0, 2, 5);
  const EnsembleControl u = EnsembleControl::zeros(grid, 0);

  const auto defects = duality_defect(model, grid, u, squared_cost(), times,
                                      n_paths, n_particles, seed);
  std::vector<CheckResult> out;
  for (const auto& d : defects) {
    CheckResult res;
    res.name = "duality_defect_t" + std::to_string(d.time);
    res.measured = d.defect;
    res.reference = 0.0;
    res.tolerance = sigma_factor * std::max(d.std_error, 1e-12);
    res.pass = std::abs(res.measured) <= res.tolerance;
    out.push_back(res);
  }
  return out;
}

CheckResult increment_check(int n_direct, int n_inner, int n_particles,
                            std::uint64_t seed, double sigma_factor) {
  // dX = (0.3 X + w) dt + 0.5 dW, X_0 = 1, l(x) = x^2, T = 1.
  const ModelDefinition model = controlled_linear_model(0.3, 1.0, 0.5, 1.0);
  const TimeGrid grid = TimeGrid::regular(1.0, 40, 2);
  const CostFunction cost = squared_cost();
  const int K = grid.intervals();

  EnsembleControl u_ref = EnsembleControl::zeros(grid, 1);
  EnsembleControl u_new = EnsembleControl::zeros(grid, 1);
  u_new.coeffs.setConstant(0.3);

  // Direct side: Delta J from independent test evaluations.
  const EvalResult j_new =
      evaluate_cost(model, grid, u_new, cost, n_direct, seed, 0xA1u);
  const EvalResult j_ref =
      evaluate_cost(model, grid, u_ref, cost, n_direct, seed, 0xA2u);
  const double direct = j_new.cost - j_ref.cost;
  const double direct_var = j_new.std_error * j_new.std_error +
                            j_ref.std_error * j_ref.std_error;

  // Integral side: particles under u_new, adjoint gradients under u_ref,
  // left-endpoint rule on the control grid. Per-particle trajectory sums
  // C_l are i.i.d., which gives the std error of the integral estimate.
  std::vector<double> contrib(n_particles, 0.0);
  par::parallel_for(n_particles, [&](std::int64_t l) {
    GaussianStream init(seed, {StreamPurpose::Diagnostic, 0xB0u,
                               static_cast<std::uint64_t>(l), 0});
    GaussianStream path(seed, {StreamPurpose::Diagnostic, 0xB1u,
                               static_cast<std::uint64_t>(l), 0});
    Vec x = model.initial_law(init);
    stats::add_path_segments(1);
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
      const double t = grid.knots[k];
      const double dt = grid.knots[k + 1] - t;
      const AdjointEstimate est = estimate_grad_p(
          model, grid, u_ref, t, x, n_inner, cost, seed,
          {StreamPurpose::Adjoint, 0xB2u,
           (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint64_t>(l),
           0});
      const double dh =
          hamiltonian(model, t, x, est.gradient, u_new.coeffs.row(k)) -
          hamiltonian(model, t, x, est.gradient, u_ref.coeffs.row(k));
      acc += dh * dt;
      x = advance(model, grid, u_new, t, grid.knots[k + 1], std::move(x), path);
    }
    contrib[l] = acc;
  });
  double integral = 0.0;
  for (double c : contrib) integral += c;
  integral /= n_particles;
  double var = 0.0;
  for (double c : contrib) var += (c - integral) * (c - integral);
  const double integral_var =
      n_particles > 1 ? var / (n_particles - 1) / n_particles : 0.0;

  CheckResult res;
  res.name = "increment_formula_linear";
  res.measured = integral;
  res.reference = direct;
  res.tolerance = sigma_factor * std::sqrt(direct_var + integral_var);
  res.pass = std::abs(res.measured - res.reference) <= res.tolerance;
  return res;
}

CheckResult trace_covariance_check(int n_ensembles, std::uint64_t seed) {
  double worst = 0.0;
  for (int e = 0; e < n_ensembles; ++e) {
    GaussianStream rng(seed, {StreamPurpose::Diagnostic, 0xC0u,
                              static_cast<std::uint64_t>(e), 0});
    const int m = 2 + static_cast<int>(rng.uniform() * 199);  // M <= 200
    const int n = 1 + static_cast<int>(rng.uniform() * 5);    // n <= 5
    ParticleEnsemble ens;
    ens.states.resize(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) ens.states(i, j) = 3.0 * rng.normal();

    const double pairwise = trace_covariance(ens);
    const Vec mean = ens.states.colwise().mean();
    double direct = 0.0;
    for (int i = 0; i < m; ++i)
      direct += (ens.states.row(i).transpose() - mean).squaredNorm();
    direct /= m;
    worst = std::max(worst, std::abs(pairwise - direct));
  }
  CheckResult res;
  res.name = "trace_covariance_identity";
  res.measured = worst;
  res.reference = 0.0;
  res.tolerance = 1e-12;
  res.pass = worst <= res.tolerance;
  return res;
}

}  // namespace mindisp
