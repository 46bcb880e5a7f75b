#include "wpflow/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/numeric/odeint.hpp>

#include "wpflow/errors.hpp"

namespace wpflow {

using std::numbers::pi;

namespace {

void check_common(double R0, double R_bar, double kappa, const std::vector<double>& times) {
  if (!(R0 > 0) || !(R_bar > 0)) throw std::invalid_argument("circle ODE: radii must be positive");
  if (!(kappa > 2)) throw std::invalid_argument("circle ODE: oracle requires kappa > 2");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] >= times[i - 1])) throw std::invalid_argument("circle ODE: times must increase");
  if (!times.empty() && times.front() < 0) throw std::invalid_argument("circle ODE: negative time");
}

template <class Rhs>
std::vector<double> integrate(Rhs rhs, double R0, double max_dt, const std::vector<double>& times) {
  namespace odeint = boost::numeric::odeint;
  odeint::runge_kutta4<double> stepper;
  auto system = [&](const double& R, double& dRdt, double) { dRdt = rhs(R); };
  std::vector<double> out;
  out.reserve(times.size());
  double R = R0, t = 0.0;
  for (double target : times) {
    if (target > t) {
      const long steps = static_cast<long>(std::ceil((target - t) / max_dt));
      const double dt = (target - t) / steps;
      odeint::integrate_n_steps(stepper, system, R, t, dt, steps);
      t = target;
    }
    out.push_back(R);
  }
  return out;
}

}  // namespace

std::vector<double> euclid_circle_ode(double R0, double R_bar, double kappa,
                                      const std::vector<double>& times, double max_step) {
  check_common(R0, R_bar, kappa, times);
  const double max_dt = max_step > 0 ? max_step : 1e-4 * R_bar * R_bar / (kappa - 2);
  return integrate([&](double R) { return (kappa - 2) * (1 / R - 1 / R_bar); }, R0, max_dt, times);
}

double schwarz_circle_rate(double M, double R, double R_bar, double kappa) {
  if (!(R > 2 * M)) throw DomainError("Schwarzschild circle ODE: radius reached 2M");
  const double lapse = std::sqrt(1 - 2 * M / R), lapse_bar = std::sqrt(1 - 2 * M / R_bar);
  return (-(2 / R * lapse - 2 / R_bar * lapse_bar) + kappa * (1 / R - 1 / R_bar)) * lapse;
}

std::vector<double> schwarz_circle_ode(double M, double R0, double R_bar, double kappa,
                                       const std::vector<double>& times, double max_step) {
  check_common(R0, R_bar, kappa, times);
  if (!(R0 > 2 * M) || !(R_bar > 2 * M))
    throw DomainError("Schwarzschild circle ODE: radii must exceed 2M");
  const double max_dt = max_step > 0 ? max_step : 1e-4 * R_bar * R_bar / (kappa - 2);
  return integrate([&](double R) { return schwarz_circle_rate(M, R, R_bar, kappa); }, R0, max_dt,
                   times);
}

double f_kappa_M(double M, double R_bar, double kappa, double rho) {
  if (!(rho * R_bar > 2 * M)) throw DomainError("f_kappa_M: rho must exceed 2M / Rbar");
  const double ref = kappa - 2 * std::sqrt(1 - 2 * M / R_bar);
  return (kappa - 2 * std::sqrt(1 - 2 * M / (rho * R_bar))) / ref - rho;
}

double mode_lambda(int l, double kappa) {
  if (l < 1) throw std::invalid_argument("mode_lambda: l must be >= 1");
  const double ll = l * (l + 1.0);
  if (std::abs(ll - kappa) < 1e-12 * ll)
    throw DomainError("mode_lambda: kappa = l(l+1) = " + std::to_string(ll) + " is a pole");
  // y = cos(phi) removes the endpoint singularity
  boost::math::quadrature::tanh_sinh<double> quad;
  const double integral = quad.integrate(
      [l](double phi) { return boost::math::legendre_p(l, std::cos(phi)); }, 0.0, pi);
  return ll * kappa / ((ll - kappa) * pi) * integral;
}

double ModeSpec::shape(double tau) const {
  const int l = 2 * n;
  return boost::math::legendre_p(l, std::cos(tau / R_bar)) + lambda / (l * (l + 1.0));
}

Vec ModeSpec::shape_on(const SpectralGrid& grid) const {
  Vec v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v(j) = shape(grid.tau()(j));
  return v;
}

ModeSpec linear_mode(double R_bar, double kappa, int n) {
  if (n < 1) throw std::invalid_argument("linear_mode: n must be >= 1");
  if (!(kappa > 2)) throw std::invalid_argument("linear_mode: kappa must exceed 2");
  if (!(R_bar > 0)) throw std::invalid_argument("linear_mode: Rbar must be positive");
  ModeSpec m;
  m.R_bar = R_bar;
  m.kappa = kappa;
  m.n = n;
  m.lambda = mode_lambda(2 * n, kappa);
  m.rate = (2.0 - 2.0 * n * (2 * n + 1)) / (R_bar * R_bar);
  return m;
}

double constant_mode_rate(double R_bar, double kappa) { return (2 - kappa) / (R_bar * R_bar); }

double tangential_mode_rate(double R_bar, int n) { return -(4.0 * n * n) / (R_bar * R_bar); }

}  // namespace wpflow
