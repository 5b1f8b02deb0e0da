#pragma once

#include <utility>
#include <vector>

#include "mindisp/sde.hpp"

namespace mindisp {

// Admissible set for the coefficient vector u at one knot.
struct ControlSpace {
  enum class Kind { UnboundedWithPenalty, Box };

  Kind kind = Kind::UnboundedWithPenalty;
  int dim = 0;
  double penalty_weight = 1.0;  // lambda, unbounded case
  Vec lo, hi;                   // box case

  static ControlSpace penalty(int dim, double lambda);
  static ControlSpace box(Vec lo, Vec hi);
  void validate() const;
  bool contains(const Vec& u) const;
};

// Thrown when the drift is not affine in the Markovian control value and the
// closed-form coefficient decomposition cannot be used.
struct UnsupportedControlStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ensemble-averaged Hamiltonian as an affine function of the coefficient
// vector: (1/M) sum_l H(x_l, psi_l, u) = constant + linear . u.
struct AffineHamiltonianCoeffs {
  double constant = 0.0;
  Vec linear;
};

// Hamilton-Pontryagin value psi . f_t(x, w(x, v)) for a coefficient vector v.
double hamiltonian(const ModelDefinition& model, double t, const Vec& x,
                   const Vec& psi, const Vec& v);

// Affine coefficients of the ensemble-averaged Hamiltonian over
// (state, adjoint-gradient) pairs. Probes the drift at unit control values
// and verifies affinity; throws UnsupportedControlStructure otherwise.
AffineHamiltonianCoeffs averaged_coeffs(
    const ModelDefinition& model, double t,
    const std::vector<std::pair<Vec, Vec>>& points);

// Minimizer of linear . u (+ lambda ||u||^2 in the penalty case) over the
// control space. Penalty: u* = -linear / (2 lambda). Box: componentwise
// clamp of the affine objective, ties broken toward no actuation.
Vec argmin_control(const AffineHamiltonianCoeffs& coeffs,
                   const ControlSpace& space);

// Uniform grid search over a box; the fallback for non-affine drifts and the
// oracle used to certify the closed forms.
Vec argmin_control_grid(const std::function<double(const Vec&)>& objective,
                        const Vec& lo, const Vec& hi, int points_per_dim);

}  // namespace mindisp
