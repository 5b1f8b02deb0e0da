#include "mindisp/models.hpp"

#include <cmath>
#include <stdexcept>

namespace mindisp {

ModelDefinition theta_model(const ThetaParams& params) {
  if (params.beta < 0.0) throw std::invalid_argument("beta must be >= 0");

  ModelDefinition model;
  model.state_dim = 2;
  model.noise_dim = 1;
  model.value_dim = 1;
  model.control_dim = 4;

  model.drift = [](double, const Vec& x, const Vec& w) {
    const double c = std::cos(x[0]);
    Vec out(2);
    out[0] = (1.0 - c) + (1.0 + c) * (x[1] + w[0]);
    out[1] = 0.0;
    return out;
  };
  const double noise_coef = std::sqrt(2.0 * params.beta);
  model.diffusion = [noise_coef](double, const Vec&) {
    Mat out(2, 1);
    out(0, 0) = 0.0;
    out(1, 0) = noise_coef;
    return out;
  };
  model.feedback_basis = {
      [](const Vec&) { return Vec::Constant(1, 1.0); },
      [](const Vec& x) { return Vec::Constant(1, x[1]); },
      [](const Vec& x) { return Vec::Constant(1, std::cos(x[0])); },
      [](const Vec& x) { return Vec::Constant(1, std::sin(x[0])); },
  };
  model.initial_law = [params](GaussianStream& rng) {
    Vec x(2);
    x[0] = params.x0_mean + params.x0_std * rng.normal();
    x[1] = params.y0_mean + params.y0_std * rng.normal();
    return x;
  };
  return model;
}

ModelDefinition brownian_model(double beta, double y0) {
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");

  ModelDefinition model;
  model.state_dim = 1;
  model.noise_dim = 1;
  model.value_dim = 0;
  model.control_dim = 0;

  model.drift = [](double, const Vec& x, const Vec&) {
    return Vec(Vec::Zero(x.size()));
  };
  const double noise_coef = std::sqrt(2.0 * beta);
  model.diffusion = [noise_coef](double, const Vec&) {
    return Mat(Mat::Constant(1, 1, noise_coef));
  };
  model.initial_law = [y0](GaussianStream&) { return Vec(Vec::Constant(1, y0)); };
  return model;
}

ModelDefinition controlled_linear_model(double a, double b, double sigma,
                                        double x0) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(sigma))
    throw std::invalid_argument("coefficients must be finite");

  ModelDefinition model;
  model.state_dim = 1;
  model.noise_dim = 1;
  model.value_dim = 1;
  model.control_dim = 1;

  model.drift = [a, b](double, const Vec& x, const Vec& w) {
    return Vec(Vec::Constant(1, a * x[0] + b * w[0]));
  };
  model.diffusion = [sigma](double, const Vec&) {
    return Mat(Mat::Constant(1, 1, sigma));
  };
  model.feedback_basis = {[](const Vec&) { return Vec::Constant(1, 1.0); }};
  model.initial_law = [x0](GaussianStream&) { return Vec(Vec::Constant(1, x0)); };
  return model;
}

}  // namespace mindisp
