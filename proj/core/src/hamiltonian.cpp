#include "mindisp/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mindisp {

ControlSpace ControlSpace::penalty(int dim, double lambda) {
  ControlSpace s;
  s.kind = Kind::UnboundedWithPenalty;
  s.dim = dim;
  s.penalty_weight = lambda;
  s.validate();
  return s;
}

ControlSpace ControlSpace::box(Vec lo, Vec hi) {
  ControlSpace s;
  s.kind = Kind::Box;
  s.dim = static_cast<int>(lo.size());
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  s.validate();
  return s;
}

void ControlSpace::validate() const {
  if (dim < 1) throw std::invalid_argument("control dimension must be >= 1");
  if (kind == Kind::UnboundedWithPenalty) {
    if (!(penalty_weight > 0.0))
      throw std::invalid_argument("penalty weight must be > 0");
  } else {
    if (lo.size() != dim || hi.size() != dim)
      throw std::invalid_argument("box bounds must match control dimension");
    for (int i = 0; i < dim; ++i) {
      if (!(lo[i] < hi[i]))
        throw std::invalid_argument("box bounds must satisfy lo < hi");
    }
  }
}

bool ControlSpace::contains(const Vec& u) const {
  if (u.size() != dim) return false;
  if (kind == Kind::UnboundedWithPenalty) return u.allFinite();
  for (int i = 0; i < dim; ++i) {
    if (u[i] < lo[i] || u[i] > hi[i]) return false;
  }
  return true;
}

double hamiltonian(const ModelDefinition& model, double t, const Vec& x,
                   const Vec& psi, const Vec& v) {
  return psi.dot(model.drift(t, x, model.markov_value(x, v)));
}

AffineHamiltonianCoeffs averaged_coeffs(
    const ModelDefinition& model, double t,
    const std::vector<std::pair<Vec, Vec>>& points) {
  if (points.empty()) throw std::invalid_argument("points must be non-empty");
  const int d = model.control_dim;
  const int vd = model.value_dim;

  AffineHamiltonianCoeffs coeffs;
  coeffs.linear = Vec::Zero(d);

  Vec e = Vec::Zero(vd);
  for (const auto& [x, psi] : points) {
    const Vec f0 = model.drift(t, x, Vec::Zero(vd));
    coeffs.constant += psi.dot(f0);

    // psi^T * (df/dw), column by column, with an affinity probe at 2 e_i.
    Vec psiF(vd);
    for (int i = 0; i < vd; ++i) {
      e[i] = 1.0;
      const Vec f1 = model.drift(t, x, e);
      e[i] = 2.0;
      const Vec f2 = model.drift(t, x, e);
      e[i] = 0.0;
      const double scale = 1.0 + f0.norm() + f1.norm() + f2.norm();
      if ((f2 - 2.0 * f1 + f0).norm() > 1e-8 * scale) {
        throw UnsupportedControlStructure(
            "drift is not affine in the control value; use the grid minimizer");
      }
      psiF[i] = psi.dot(f1 - f0);
    }
    for (int j = 0; j < d; ++j) {
      coeffs.linear[j] += psiF.dot(model.feedback_basis[j](x));
    }
  }
  const double inv_m = 1.0 / static_cast<double>(points.size());
  coeffs.constant *= inv_m;
  coeffs.linear *= inv_m;
  return coeffs;
}

Vec argmin_control(const AffineHamiltonianCoeffs& coeffs,
                   const ControlSpace& space) {
  space.validate();
  if (coeffs.linear.size() != space.dim)
    throw std::invalid_argument("coefficient/control dimension mismatch");

  if (space.kind == ControlSpace::Kind::UnboundedWithPenalty) {
    return -coeffs.linear / (2.0 * space.penalty_weight);
  }
  Vec u(space.dim);
  for (int i = 0; i < space.dim; ++i) {
    const double b = coeffs.linear[i];
    if (b > 0.0) {
      u[i] = space.lo[i];
    } else if (b < 0.0) {
      u[i] = space.hi[i];
    } else {
      u[i] = (space.lo[i] <= 0.0 && 0.0 <= space.hi[i]) ? 0.0 : space.lo[i];
    }
  }
  return u;
}

Vec argmin_control_grid(const std::function<double(const Vec&)>& objective,
                        const Vec& lo, const Vec& hi, int points_per_dim) {
  const int d = static_cast<int>(lo.size());
  if (points_per_dim < 2)
    throw std::invalid_argument("need >= 2 grid points per dimension");

  Vec best;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<int> idx(d, 0);
  Vec u(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      u[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / (points_per_dim - 1);
    }
    const double val = objective(u);
    if (val < best_val) {
      best_val = val;
      best = u;
    }
    int i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < points_per_dim) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  return best;
}

}  // namespace mindisp
