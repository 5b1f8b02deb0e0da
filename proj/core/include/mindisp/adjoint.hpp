#pragma once

#include <vector>

#include "mindisp/costs.hpp"
#include "mindisp/sde.hpp"

namespace mindisp {

// Monte-Carlo estimate of the backward Kolmogorov solution p(t, x) (the
// conditional expected terminal cost) and, optionally, its spatial gradient.
struct AdjointEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Vec gradient;            // empty unless estimated
  Vec gradient_std_error;  // per-coordinate error bars of the CRN differences
  int n_paths = 0;
};

// Feynman-Kac value estimate: average of cost over N paths started
// deterministically at (t, x) under ref_control. At t = horizon this is
// cost(x) exactly. Stream identity: (Adjoint-purpose ns) with inner path j
// keyed through ns.sub, so ns.sub must stay below 2^32.
AdjointEstimate estimate_p(const ModelDefinition& model, const TimeGrid& grid,
                           const EnsembleControl& ref_control, double t,
                           const Vec& x, int N, const CostFunction& cost,
                           std::uint64_t seed, const StreamId& ns);

// Value plus gradient via central finite differences with common random
// numbers: all 2n+1 start points replay the same N noise streams. Step per
// coordinate is h_scale * max(1, |x_i|).
AdjointEstimate estimate_grad_p(const ModelDefinition& model,
                                const TimeGrid& grid,
                                const EnsembleControl& ref_control, double t,
                                const Vec& x, int N, const CostFunction& cost,
                                std::uint64_t seed, const StreamId& ns,
                                double h_scale = 1e-3);

struct DualityDefect {
  double time = 0.0;
  double defect = 0.0;
  double std_error = 0.0;
};

// Diagnostic for the conservation of the pairing of mu_t with p_t: returns
// the estimate of <mu_t, p_t> - <mu_0, p_0> at each requested knot time,
// paired over M particles. Expected to vanish when the same control
// generates both the ensemble and the adjoint.
std::vector<DualityDefect> duality_defect(const ModelDefinition& model,
                                          const TimeGrid& grid,
                                          const EnsembleControl& control,
                                          const CostFunction& cost,
                                          const std::vector<double>& times,
                                          int N, int M, std::uint64_t seed);

}  // namespace mindisp
