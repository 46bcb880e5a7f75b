#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/roots.hpp>

#include "doctest.h"
#include "support.hpp"
#include "wpflow/errors.hpp"
#include "wpflow/oracles.hpp"

using namespace wpflow;
using namespace testing_support;
using std::numbers::pi;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

double chebyshev_moment(int l) {
  // Gauss-Chebyshev rule with K nodes is exact for degree <= 2K - 1
  const int K = l + 2;
  double s = 0.0;
  for (int i = 1; i <= K; ++i) s += boost::math::legendre_p(l, std::cos((2 * i - 1) * pi / (2 * K)));
  return s * pi / K;
}

}  // namespace

TEST_CASE("Euclidean circle ODE") {
  const auto t = linspace(0, 10, 51);
  for (double R : euclid_circle_ode(2.0, 2.0, 4.0, t)) CHECK(R == 2.0);
  const auto shrink = euclid_circle_ode(4.0, 2.0, 4.0, t);
  const auto grow = euclid_circle_ode(1.0, 2.0, 4.0, t);
  for (size_t i = 1; i < t.size(); ++i) {
    CHECK(shrink[i] < shrink[i - 1]);
    CHECK(shrink[i] > 2.0);
    CHECK(grow[i] > grow[i - 1]);
    CHECK(grow[i] < 2.0);
  }
  CHECK_THROWS_AS(euclid_circle_ode(4.0, 2.0, 2.0, t), std::invalid_argument);
}

TEST_CASE("Euclidean circle ODE against the implicit solution") {
  const auto t = linspace(0, 10, 21);
  const auto R = euclid_circle_ode(4.0, 2.0, 4.0, t);
  for (size_t i = 1; i < t.size(); ++i) {
    // R approaches 2 from above; the implicit time diverges there
    auto f = [&](double x) {
      const double psi = 2.0 * (-x - 2.0 * std::log(x - 2.0));
      const double psi0 = 2.0 * (-4.0 - 2.0 * std::log(2.0));
      return (psi - psi0) / 2.0 - t[i];
    };
    std::uintmax_t iters = 200;
    const auto br = boost::math::tools::toms748_solve(f, 2.0 + 1e-12, 4.0,
                                                      boost::math::tools::eps_tolerance<double>(52), iters);
    CHECK(std::abs(R[i] - 0.5 * (br.first + br.second)) < 1e-8);
  }
}

TEST_CASE("Schwarzschild circle ODE") {
  const auto t = linspace(0, 10, 41);
  for (double R : schwarz_circle_ode(1.0, 3.0, 3.0, 4.0, t)) CHECK(R == 3.0);
  const auto e = euclid_circle_ode(4.0, 3.0, 4.0, t);
  const auto s = schwarz_circle_ode(0.0, 4.0, 3.0, 4.0, t);
  const auto s_small = schwarz_circle_ode(1e-13, 4.0, 3.0, 4.0, t);
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(std::abs(e[i] - s[i]) < 1e-10);
    CHECK(std::abs(e[i] - s_small[i]) < 1e-10);
  }
  const auto down = schwarz_circle_ode(1.0, 4.0, 3.0, 4.0, t);
  const auto up = schwarz_circle_ode(1.0, 2.2, 3.0, 4.0, t);
  for (size_t i = 1; i < t.size(); ++i) {
    CHECK(down[i] < down[i - 1]);
    CHECK(up[i] > up[i - 1]);
  }
  CHECK_THROWS_AS(schwarz_circle_ode(1.0, 2.0, 3.0, 4.0, t), DomainError);
}

TEST_CASE("oracle integrations are step converged") {
  const std::vector<double> t{10.0};
  const double h = 1e-4 * 4.0 / 2.0;
  CHECK(std::abs(euclid_circle_ode(4.0, 2.0, 4.0, t, h)[0] - euclid_circle_ode(4.0, 2.0, 4.0, t, h / 2)[0]) < 1e-10);
  const double hs = 1e-4 * 9.0 / 2.0;
  CHECK(std::abs(schwarz_circle_ode(1.0, 4.0, 3.0, 4.0, t, hs)[0] -
                 schwarz_circle_ode(1.0, 4.0, 3.0, 4.0, t, hs / 2)[0]) < 1e-10);
}

TEST_CASE("sign function has a single zero") {
  for (double kappa : {2.5, 4.0, 40.0}) {
    for (double R_bar : {2.16, 3.0, 6.0}) {
      const double M = 1.0;
      CHECK(std::abs(f_kappa_M(M, R_bar, kappa, 1.0)) < 1e-15);
      int changes = 0;
      double prev = f_kappa_M(M, R_bar, kappa, 2 * M / R_bar + 1e-9);
      CHECK(prev > 0);
      for (double rho : linspace(2 * M / R_bar + 1e-3, 3.0, 3001)) {
        const double f = f_kappa_M(M, R_bar, kappa, rho);
        if ((f > 0) != (prev > 0)) ++changes;
        prev = f;
      }
      CHECK(changes == 1);
      CHECK(prev < 0);
    }
  }
}

TEST_CASE("Chebyshev moments of Legendre polynomials") {
  CHECK(std::abs(mode_lambda(1, 4.0)) < 1e-14);
  CHECK(std::abs(mode_lambda(3, 4.0)) < 1e-13);
  for (int n = 1; n <= 4; ++n) {
    const int l = 2 * n;
    const double c = boost::math::factorial<double>(l) /
                     (std::pow(4.0, n) * std::pow(boost::math::factorial<double>(n), 2));
    const double closed = pi * c * c;
    CHECK(chebyshev_moment(l) == doctest::Approx(closed).epsilon(1e-13));
    const double kappa = 4.0;
    const double ll = l * (l + 1.0);
    CHECK(mode_lambda(l, kappa) == doctest::Approx(ll * kappa / ((ll - kappa) * pi) * closed).epsilon(1e-12));
  }
  // integral of P_2 / sqrt(1 - y^2) is +pi/4, so lambda_2 = +3 at kappa = 4
  CHECK(chebyshev_moment(2) == doctest::Approx(pi / 4).epsilon(1e-14));
  CHECK(mode_lambda(2, 4.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(mode_lambda(2, 6.0), DomainError);
  CHECK_THROWS_AS(linear_mode(2.0, 20.0, 2), DomainError);
}

TEST_CASE("linear modes") {
  const double R_bar = 2.0;
  const auto m1 = linear_mode(R_bar, 4.0, 1);
  CHECK(m1.rate == doctest::Approx(-4.0 / (R_bar * R_bar)));
  CHECK(linear_mode(R_bar, 4.0, 2).rate == doctest::Approx(-18.0 / (R_bar * R_bar)));
  CHECK(constant_mode_rate(R_bar, 4.0) == doctest::Approx(-0.5));
  CHECK(tangential_mode_rate(R_bar, 1) == doctest::Approx(-1.0));
  for (int n = 1; n <= 4; ++n) CHECK(linear_mode(R_bar, 3.0, n).rate < 0);

  SpectralGrid g(40, pi * R_bar);
  const Vec b = m1.shape_on(g);
  CHECK(std::abs((g.c1() * b)(0)) < 1e-12);
  CHECK(std::abs((g.c1() * b)(40)) < 1e-12);
  CHECK(g.symmetry_defect(b, Parity::Even) < 1e-13);
}

TEST_CASE("mode shapes solve the linearised eigenproblem") {
  for (double kappa : {3.0, 4.0, 8.0}) {
    for (int n : {1, 2, 3}) {
      const double R_bar = 1.7;
      const auto m = linear_mode(R_bar, kappa, n);
      const double L = pi * R_bar;
      using boost::math::quadrature::gauss_kronrod;
      const double integral =
          gauss_kronrod<double, 61>::integrate([&](double t) { return m.shape(t); }, 0.0, L, 10, 1e-14);
      const double alpha = -2.0 * n * (2 * n + 1);
      double worst = 0.0;
      for (double tau : linspace(0.05 * L, 0.95 * L, 37)) {
        const double h = 1e-3;
        const double b1 = fd4([&](double t) { return m.shape(t); }, tau, h);
        const double b2 = fd4_second([&](double t) { return m.shape(t); }, tau, h);
        const double lhs = b2 + b1 / R_bar / std::tan(tau / R_bar) -
                           kappa / (pi * std::pow(R_bar, 3)) * integral;
        worst = std::max(worst, std::abs(lhs - alpha / (R_bar * R_bar) * m.shape(tau)));
      }
      CHECK(worst < 1e-8);
    }
  }
}
