#pragma once

#include <vector>

#include "wpflow/spectral.hpp"

namespace wpflow {

// Radius of a flowing Euclidean coordinate circle,
// dR/dt = (kappa - 2)(1/R - 1/Rbar), sampled at the given increasing times.
// Classical RK4; max_step <= 0 selects 1e-4 Rbar^2 / (kappa - 2).
std::vector<double> euclid_circle_ode(double R0, double R_bar, double kappa,
                                      const std::vector<double>& times, double max_step = 0);

// Schwarzschild-coordinate radius of a flowing centred sphere in a fixed
// Schwarzschild background of mass M.
std::vector<double> schwarz_circle_ode(double M, double R0, double R_bar, double kappa,
                                       const std::vector<double>& times, double max_step = 0);

double schwarz_circle_rate(double M, double R, double R_bar, double kappa);

// Rescaled right-hand side of the Schwarzschild radius ODE as a function of
// rho = R / Rbar; vanishes only at rho = 1.
double f_kappa_M(double M, double R_bar, double kappa, double rho);

// Linearised normal perturbation mode about the round stationary circle.
struct ModeSpec {
  double R_bar = 0;
  double kappa = 0;
  int n = 0;
  double lambda = 0;  // lambda_{2n}
  double rate = 0;    // (2 - 2n(2n+1)) / Rbar^2

  // b_{2n}(tau) = P_{2n}(cos(tau / Rbar)) + lambda / (2n(2n+1))
  double shape(double tau) const;
  Vec shape_on(const SpectralGrid& grid) const;
};

ModeSpec linear_mode(double R_bar, double kappa, int n);

// lambda_l = l(l+1) kappa / ((l(l+1) - kappa) pi) * int_{-1}^{1} P_l / sqrt(1 - y^2)
double mode_lambda(int l, double kappa);

// Decay rate of the spatially constant normal mode, (2 - kappa) / Rbar^2.
double constant_mode_rate(double R_bar, double kappa);

// Decay rate of the tangential mode theta_hat = eps sin(2 n tau / Rbar),
// -(2n)^2 / Rbar^2.
double tangential_mode_rate(double R_bar, int n);

}  // namespace wpflow
