#include "mindisp/costs.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mindisp {

CostFunction central_moment_cost(const MomentIndex& idx) {
  if (idx.alpha.size() != idx.target.size())
    throw std::invalid_argument("alpha and target must have equal length");
  if (idx.order() < 1) throw std::invalid_argument("moment order must be >= 1");
  const Eigen::VectorXi alpha = idx.alpha;
  const Vec target = idx.target;

  CostFunction cost;
  cost.eval = [alpha, target](const Vec& x) {
    double prod = 1.0;
    for (int j = 0; j < alpha.size(); ++j)
      prod *= std::pow(x[j] - target[j], alpha[j]);
    return prod;
  };
  cost.gradient = [alpha, target](const Vec& x) {
    Vec g = Vec::Zero(x.size());
    for (int i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      double prod = alpha[i] * std::pow(x[i] - target[i], alpha[i] - 1);
      for (int j = 0; j < alpha.size(); ++j) {
        if (j != i) prod *= std::pow(x[j] - target[j], alpha[j]);
      }
      g[i] = prod;
    }
    return g;
  };
  return cost;
}

CostFunction spike_cost(int p) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  CostFunction cost;
  cost.eval = [p](const Vec& x) {
    const double s = std::sin(x[0]);
    const double c = std::cos(x[0]) - 1.0;
    return std::pow(s * s, p) + std::pow(c * c, p);
  };
  cost.gradient = [p](const Vec& x) {
    const double s = std::sin(x[0]);
    const double c = std::cos(x[0]);
    Vec g = Vec::Zero(x.size());
    g[0] = 2.0 * p * std::pow(s, 2 * p - 1) * c -
           2.0 * p * std::pow(c - 1.0, 2 * p - 1) * s;
    return g;
  };
  return cost;
}

ModelDefinition doubled_model(const ModelDefinition& base) {
  const int n = base.state_dim;
  const int m = base.noise_dim;
  const int vd = base.value_dim;

  ModelDefinition model;
  model.state_dim = 2 * n;
  model.noise_dim = 2 * m;
  model.value_dim = 2 * vd;
  model.control_dim = base.control_dim;

  model.drift = [base, n, vd](double t, const Vec& x, const Vec& w) {
    Vec out(2 * n);
    out.head(n) = base.drift(t, x.head(n), w.head(vd));
    out.tail(n) = base.drift(t, x.tail(n), w.tail(vd));
    return out;
  };
  model.diffusion = [base, n, m](double t, const Vec& x) {
    Mat out = Mat::Zero(2 * n, 2 * m);
    out.topLeftCorner(n, m) = base.diffusion(t, x.head(n));
    out.bottomRightCorner(n, m) = base.diffusion(t, x.tail(n));
    return out;
  };
  // Each block evaluates the basis on its own coordinates; the blocks share
  // the same coefficient vector u(t).
  for (int j = 0; j < base.control_dim; ++j) {
    auto xi = base.feedback_basis[j];
    model.feedback_basis.push_back([xi, n, vd](const Vec& x) {
      Vec out(2 * vd);
      out.head(vd) = xi(x.head(n));
      out.tail(vd) = xi(x.tail(n));
      return out;
    });
  }
  model.initial_law = [base, n](GaussianStream& rng) {
    Vec out(2 * n);
    out.head(n) = base.initial_law(rng);
    out.tail(n) = base.initial_law(rng);
    return out;
  };
  return model;
}

CostFunction doubled_spread_cost(int base_dim) {
  const int n = base_dim;
  CostFunction cost;
  cost.eval = [n](const Vec& x) {
    return 0.5 * (x.head(n) - x.tail(n)).squaredNorm();
  };
  cost.gradient = [n](const Vec& x) {
    Vec g(2 * n);
    const Vec d = x.head(n) - x.tail(n);
    g.head(n) = d;
    g.tail(n) = -d;
    return g;
  };
  return cost;
}

double trace_covariance(const ParticleEnsemble& samples) {
  const auto M = samples.states.rows();
  if (M < 1) throw std::invalid_argument("ensemble must be non-empty");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < M; ++i) {
    for (Eigen::Index j = 0; j < M; ++j) {
      acc += (samples.states.row(i) - samples.states.row(j)).squaredNorm();
    }
  }
  return acc / (2.0 * static_cast<double>(M) * static_cast<double>(M));
}

CostFunction finite_difference_gradient(std::function<double(const Vec&)> eval,
                                        double h) {
  CostFunction cost;
  cost.eval = eval;
  cost.gradient = [eval = std::move(eval), h](const Vec& x) {
    Vec g(x.size());
    Vec xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      xp[i] = x[i] + h;
      const double fp = eval(xp);
      xp[i] = x[i] - h;
      const double fm = eval(xp);
      xp[i] = x[i];
      g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
  };
  return cost;
}

}  // namespace mindisp
