#pragma once

#include "mindisp/sde.hpp"

namespace mindisp {

// Stochastic Ermentrout-Kopell (Theta) neuron: phase X on the real line
// (deliberately unwrapped, spiking = crossing 2*pi*k) and baseline current Y
// driven by Brownian noise of intensity beta. The Markovian excitation is
// w(x, y) = u1 + u2 y + u3 cos x + u4 sin x.
//
// The default initial law starts the phase near the spike (x = pi) with an
// inhibitory baseline current (y = -1.5), so uncontrolled neurons relax to a
// noisy rest state near the stable phase equilibrium with terminal spike cost
// around 2.25. An excitatory control can push the ensemble through a spike
// and cancel the current noise, which is what the descent benchmark exploits.
struct ThetaParams {
  double beta = 0.05;
  double x0_mean = 3.14159265358979323846;
  double x0_std = 0.2;
  double y0_mean = -1.5;
  double y0_std = 0.2;
};

ModelDefinition theta_model(const ThetaParams& params = {});

// dY = sqrt(2 beta) dW, uncontrolled; law N(y0, 2 beta t). Analytic oracle
// for Feynman-Kac and duality checks.
ModelDefinition brownian_model(double beta, double y0 = 0.0);

// dX = (a X + b w) dt + sigma dW with scalar basis xi = 1 and deterministic
// start x0. Mean dynamics are closed-form, which makes it the oracle for
// descent and increment-formula checks.
ModelDefinition controlled_linear_model(double a, double b, double sigma,
                                        double x0 = 0.0);

}  // namespace mindisp
