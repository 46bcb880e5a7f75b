#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "support.hpp"
#include "wpflow/errors.hpp"
#include "wpflow/flow.hpp"
#include "wpflow/oracles.hpp"

using namespace wpflow;
using namespace testing_support;
using std::numbers::pi;

namespace {

BartnikData circle_data(int n, double R) {
  const auto g = grid(n, pi * R);
  return make_bartnik_from_curve(BackgroundMetric::euclidean(), wp_circle(g, R));
}

FlowConfig quiet_fixed() {
  FlowConfig cfg;
  cfg.smoothing_steps = 0;
  cfg.reparametrize = false;
  return cfg;
}

double mean(const Vec& v) { return v.sum() / v.size(); }

// Least-squares slope of log|a| against t.
double fitted_rate(const std::vector<double>& t, const std::vector<double>& a) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double m = static_cast<double>(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    const double y = std::log(std::abs(a[i]));
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  return (m * sty - st * sy) / (m * stt - st * st);
}

// Projection of f onto the even-class shape b.
double amplitude(const SpectralGrid& g, const Vec& f, const Vec& b) {
  return g.integrate_even(f.cwiseProduct(b)) / g.integrate_even(b.cwiseProduct(b));
}

// Fitted decay rate of amp(curve) over the last 80% of [0, t_end].
double decay_rate(const BartnikData& d, const CurveState& init, double kappa, double t_end,
                  const std::function<double(const CurveState&)>& amp) {
  FlowConfig cfg = quiet_fixed();
  cfg.kappa = kappa;
  cfg.t_max = t_end;
  std::vector<double> ts, as;
  run(cfg, d, init, std::nullopt,
      [&](long step, double t, const CurveState& c, const CurveGeometry&, const Velocity&) {
        if (step % 10 == 0 && t >= 0.2 * t_end) {
          ts.push_back(t);
          as.push_back(amp(c));
        }
      });
  return fitted_rate(ts, as);
}

}  // namespace

TEST_CASE("make_bartnik_from_curve: Euclidean circle") {
  const double R = 2.0;
  CurveState target;
  const auto g = grid(30, 5.0);  // arbitrary initial length
  const BartnikData d =
      make_bartnik_from_curve(BackgroundMetric::euclidean(), wp_circle(g, R), &target);
  CHECK(d.L_bar() == doctest::Approx(pi * R).epsilon(1e-13));
  const Vec expected = sample(*d.grid, [&](double t) { return R * std::sin(t / R); });
  CHECK(max_abs(d.lambda_bar - expected) < 1e-12);
  CHECK(max_abs(d.H_bar.array() - 2.0 / R) < 1e-12);
  CHECK(target.grid->same_as(*d.grid));
  CHECK_NOTHROW(d.validate());
  CHECK(bartnik_area(d) == doctest::Approx(4 * pi * R * R).epsilon(1e-12));
}

TEST_CASE("make_bartnik_from_curve: Schwarzschild circle") {
  const auto g = grid(30, 10.0);
  const BartnikData d = make_bartnik_from_curve(BackgroundMetric::schwarzschild(1.0),
                                                schwarzschild_circle_curve(g, 1.0, 3.0));
  CHECK(max_abs(d.H_bar.array() - (2.0 / 3.0) * std::sqrt(1.0 / 3.0)) < 1e-10);
  // area of the coordinate sphere
  CHECK(bartnik_area(d) == doctest::Approx(4 * pi * 9.0).epsilon(1e-10));
}

TEST_CASE("make_bartnik_from_curve: ellipse data and precondition") {
  const auto g = grid(40, pi * 2.0);
  const auto bg = BackgroundMetric::euclidean();
  const CurveState raw = wp_ellipse(g, 2.5, 2.0);
  CHECK_THROWS_AS(make_bartnik_from_curve(bg, raw), PreconditionError);

  const CurveState arc = smooth_to_arclength(reparametrize_by_arclength(raw, bg), bg, 4000,
                                             0.1 * g->spacing() * g->spacing());
  const BartnikData d = make_bartnik_from_curve(bg, arc, nullptr, 1e-6);
  CHECK(d.H_bar.maxCoeff() - d.H_bar.minCoeff() > 0.1);
  const Vec dH = d.grid->c1() * d.H_bar;
  CHECK(std::abs(dH(0)) < 1e-12);
  CHECK(std::abs(dH(d.n())) < 1e-12);
  CHECK_NOTHROW(d.validate());
}

TEST_CASE("perturb_bartnik") {
  const auto g = grid(30, 10.0);
  const BartnikData photon = make_bartnik_from_curve(BackgroundMetric::schwarzschild(1.0),
                                                     schwarzschild_circle_curve(g, 1.0, 3.0));
  const double L = photon.L_bar();

  SUBCASE("A = 0 keeps lambda and restores the photon-sphere H") {
    const BartnikData p = perturb_bartnik(photon, 0.0, L / 2, L / 8);
    CHECK(max_abs(p.lambda_bar - photon.lambda_bar) == 0.0);
    CHECK(max_abs(p.H_bar.array() - 2.0 / (std::sqrt(3.0) * 3.0)) < 1e-10);
    CHECK(p.L_bar() == L);
  }
  SUBCASE("as-printed exponent multiplies by 1 + A exp(-(tau - tau0) / sigma)") {
    const BartnikData p = perturb_bartnik(photon, 0.1, L / 2, L / 8);
    for (int j = 1; j < g->n(); ++j) {
      const double tau = p.grid->tau()(j);
      CHECK(p.lambda_bar(j) / photon.lambda_bar(j) ==
            doctest::Approx(1 + 0.1 * std::exp(-(tau - L / 2) / (L / 8))).epsilon(1e-14));
    }
    const double rS = std::sqrt(bartnik_area(p) / (4 * pi));
    CHECK(rS > 3.0);
    CHECK(p.H_bar(0) == doctest::Approx(2 / (std::sqrt(3.0) * rS)));
  }
  SUBCASE("area against adaptive quadrature of the smooth profile") {
    // circle data have lambda = R sin(tau / R) exactly
    const double R = 2.0;
    const BartnikData c = circle_data(64, R);
    const double Lc = c.L_bar();
    for (bool squared : {true, false}) {
      const BartnikData p = perturb_bartnik(c, 0.1, Lc / 2, Lc / 8, squared);
      auto f = [&](double t) {
        const double x = (t - Lc / 2) / (Lc / 8);
        return R * std::sin(t / R) * (1 + 0.1 * std::exp(-(squared ? x * x : x)));
      };
      const double oracle =
          2 * pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, Lc, 15, 1e-14);
      const double rel = std::abs(bartnik_area(p) - oracle) / oracle;
      MESSAGE("squared=" << squared << " relative area error " << rel);
      CHECK(rel < (squared ? 1e-8 : 1e-4));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(perturb_bartnik(photon, -0.1, L / 2, L / 8), std::invalid_argument);
  }
}

TEST_CASE("flow_rhs: stationary and reduced states") {
  SUBCASE("exact Schwarzschild state is stationary") {
    const auto g = grid(30, 10.0);
    CurveState target;
    const auto bg = BackgroundMetric::schwarzschild(1.0);
    const BartnikData d = make_bartnik_from_curve(bg, schwarzschild_circle_curve(g, 1.0, 3.0), &target);
    const Velocity v = flow_rhs(target, sample_field(bg, target), d, 4.0);
    CHECK(v.max_speed(target) < 1e-8);
  }
  SUBCASE("Euclidean circle radial velocity (kappa - 2)(1/R - 1/Rbar)") {
    const double Rbar = 2.0;
    const BartnikData d = circle_data(30, Rbar);
    for (double kappa : {3.0, 4.0, 8.0}) {
      for (double R : {1.5, 2.0, 4.0}) {
        const CurveState c = wp_circle(d.grid, R);
        const Velocity v = flow_rhs(c, FieldSample::zeros(c.size()), d, kappa);
        CHECK(max_abs(v.r.array() - (kappa - 2) * (1 / R - 1 / Rbar)) < 1e-11);
        CHECK(max_abs(v.theta) < 1e-11);
      }
    }
  }
  SUBCASE("pure tangential defect gives a tangential velocity") {
    const double R = 2.0;
    const BartnikData d = circle_data(30, R);
    const Vec th = sample(*d.grid, [&](double t) { return 0.05 * std::sin(2 * t / R); });
    const CurveState c(d.grid, Vec::Constant(d.grid->size(), R), th);
    const CurveGeometry geo = geometry(c, FieldSample::zeros(c.size()));
    // H = 2/R everywhere; L differs from Lbar only at second order
    const Velocity v = flow_rhs(c, geo, d, 4.0);
    const double length_term = 4.0 * pi * (1 / geo.L - 1 / d.L_bar());
    CHECK(max_abs(v.r) < 1e-10);
    CHECK(max_abs(geo.C) > 1e-3);
    // theta velocity is C t_theta plus the length correction on the normal
    const Vec expected = geo.C.cwiseProduct(geo.t_theta) + length_term * geo.n_theta;
    CHECK(max_abs(v.theta - expected) < 1e-10);
    CHECK(std::abs(length_term) < 1e-2);
  }
}

TEST_CASE("step_euler") {
  const BartnikData d = circle_data(30, 2.0);
  const CurveState c = wp_circle(d.grid, 3.0);
  const int m = c.size();
  SUBCASE("zero velocity") {
    const CurveState next = step_euler(c, Velocity{Vec::Zero(m), Vec::Zero(m)}, 0.01);
    CHECK(max_abs(next.r - c.r) == 0.0);
    CHECK(max_abs(next.theta_hat - c.theta_hat) == 0.0);
  }
  SUBCASE("constant radial velocity") {
    const CurveState next = step_euler(c, Velocity{Vec::Constant(m, 0.5), Vec::Zero(m)}, 0.01);
    CHECK(max_abs(next.r.array() - 3.005) < 1e-15);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(step_euler(c, Velocity{Vec::Zero(m), Vec::Zero(m)}, 0.0), std::invalid_argument);
    Vec bad = Vec::Zero(m);
    bad(3) = std::nan("");
    CHECK_THROWS_AS(step_euler(c, Velocity{bad, Vec::Zero(m)}, 0.01), BlowUpError);
  }
}

TEST_CASE("run: CFL violation blows up") {
  const BartnikData d = circle_data(30, 2.0);
  const Vec rough = sample(*d.grid, [&](double t) { return 2.0 + 1e-3 * std::cos(16 * t / 2.0); });
  // run() rejects cfl > 0.5, so step by hand with dt = 3 h^2
  CurveState c(d.grid, rough, Vec::Zero(d.grid->size()));
  const double dt = 3.0 * d.grid->spacing() * d.grid->spacing();
  bool blew_up = false;
  for (int k = 0; k < 400 && !blew_up; ++k) {
    try {
      const Velocity v = flow_rhs(c, FieldSample::zeros(c.size()), d, 4.0);
      c = step_euler(c, v, dt);
      c.validate();
    } catch (const std::exception&) {
      blew_up = true;
    }
  }
  CHECK(blew_up);
  FlowConfig cfg;
  cfg.cfl = 0.6;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("run: stationary states and classification") {
  SUBCASE("exact Schwarzschild state converges at step 0") {
    const auto g = grid(30, 10.0);
    CurveState target;
    FlowConfig cfg;
    cfg.background = BackgroundMetric::schwarzschild(1.0);
    const BartnikData d = make_bartnik_from_curve(cfg.background,
                                                  schwarzschild_circle_curve(g, 1.0, 3.0), &target);
    const FlowTrajectory tr = run(cfg, d, target, target);
    CHECK(tr.status == FlowStatus::Converged);
    CHECK(tr.steps == 0);
    CHECK(tr.final_sample.max_speed < 1e-8);
    REQUIRE(tr.final_sample.d_target);
    CHECK(*tr.final_sample.d_target < 1e-12);
  }
  SUBCASE("kappa = 2 leaves every circle stationary: spurious") {
    const BartnikData d = circle_data(30, 2.0);
    FlowConfig cfg = quiet_fixed();
    cfg.kappa = 2.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.allow_weak_coupling = true;
    const FlowTrajectory tr = run(cfg, d, wp_circle(d.grid, 3.0));
    CHECK(tr.status == FlowStatus::SpuriousStationary);
    CHECK(to_string(tr.status) == "spurious_stationary");
  }
}

TEST_CASE("run: Euclidean circle shadows the radius ODE") {
  const double Rbar = 2.0, R0 = 4.0, kappa = 4.0;
  const BartnikData d = circle_data(30, Rbar);
  FlowConfig cfg = quiet_fixed();
  cfg.t_max = 5.0;
  std::vector<double> times, radii;
  const FlowTrajectory tr = run(cfg, d, wp_circle(d.grid, R0), std::nullopt,
                                [&](long step, double t, const CurveState& c, const CurveGeometry&,
                                    const Velocity&) {
                                  if (step % 50 == 0 && t > 0) {
                                    times.push_back(t);
                                    radii.push_back(mean(c.r));
                                  }
                                });
  CHECK(tr.status == FlowStatus::TMaxReached);
  const std::vector<double> oracle = euclid_circle_ode(R0, Rbar, kappa, times);
  double worst = 0;
  for (size_t i = 0; i < times.size(); ++i)
    worst = std::max(worst, std::abs(radii[i] - oracle[i]) / oracle[i]);
  MESSAGE("max relative deviation " << worst);
  CHECK(worst < 1e-3);
}

TEST_CASE("run: linear decay rates on the Euclidean circle") {
  const double Rbar = 2.0, eps = 1e-3;
  const BartnikData d = circle_data(30, Rbar);
  const SpectralGrid& g = *d.grid;


  for (int n : {1, 2}) {
    const ModeSpec mode = linear_mode(Rbar, 4.0, n);
    const Vec b = mode.shape_on(g);
    const CurveState init(d.grid, Rbar * (1.0 + eps * b.array()).matrix(), Vec::Zero(g.size()));
    const double rate = decay_rate(d, init, 4.0, 2.0 / std::abs(mode.rate),
                                [&](const CurveState& c) {
                                  return amplitude(g, (c.r.array() - Rbar).matrix(), b);
                                });
    MESSAGE("n=" << n << " rate " << rate << " expected " << mode.rate);
    CHECK(rate == doctest::Approx(mode.rate).epsilon(0.05));
  }
  for (double kappa : {3.0, 4.0, 8.0}) {
    const CurveState init = wp_circle(d.grid, Rbar * (1 + eps));
    const double expected = constant_mode_rate(Rbar, kappa);
    const double rate = decay_rate(d, init, kappa, 2.0 / std::abs(expected),
                                [&](const CurveState& c) { return mean(c.r) - Rbar; });
    MESSAGE("kappa=" << kappa << " rate " << rate << " expected " << expected);
    CHECK(rate == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("run: tangential mode decay") {
  const double Rbar = 2.0, eps = 1e-3;
  const BartnikData d = circle_data(30, Rbar);
  const SpectralGrid& g = *d.grid;
  {
    const Vec s = sample(g, [&](double t) { return std::sin(2 * t / Rbar); });
    const CurveState init(d.grid, Vec::Constant(g.size(), Rbar), eps * s);
    const double expected = tangential_mode_rate(Rbar, 1);
    const double rate = decay_rate(d, init, 4.0, 2.0 / std::abs(expected), [&](const CurveState& c) {
      return g.integrate_even(c.theta_hat.cwiseProduct(s)) / g.integrate_even(s.cwiseProduct(s));
    });
    MESSAGE("tangential rate " << rate << " expected " << expected);
    CHECK(rate == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("run: reflection symmetry is preserved") {
  const BartnikData d = circle_data(30, 2.0);
  FlowConfig cfg;
  cfg.t_max = 1.0;
  cfg.smoothing_steps = 200;
  double worst = 0;
  run(cfg, d, wp_ellipse(d.grid, 2.5, 1.8), std::nullopt,
      [&](long, double, const CurveState& c, const CurveGeometry&, const Velocity&) {
        worst = std::max({worst, c.grid->symmetry_defect(c.r, Parity::Even),
                          c.grid->symmetry_defect(c.theta_hat, Parity::Odd)});
      });
  MESSAGE("symmetry defect " << worst);
  CHECK(worst < 1e-10);
}

TEST_CASE("run: kappa below 2 does not converge") {
  const BartnikData d = circle_data(30, 2.0);
  FlowConfig cfg = quiet_fixed();
  cfg.kappa = 1.5;
  cfg.allow_weak_coupling = true;
  cfg.t_max = 5.0;
  const FlowTrajectory tr = run(cfg, d, wp_circle(d.grid, 3.0));
  CHECK(tr.status != FlowStatus::Converged);
  // the radius moves away from Rbar
  CHECK(mean(tr.final_curve.r) > 3.0);
}

TEST_CASE("run: Euclidean circle to ellipse converges") {
  const auto bg = BackgroundMetric::euclidean();
  const auto g0 = grid(30, pi * 2.0);
  const CurveState ell = smooth_to_arclength(reparametrize_by_arclength(wp_ellipse(g0, 2.5, 2.0), bg),
                                             bg, 4000, 0.1 * g0->spacing() * g0->spacing());
  CurveState target;
  const BartnikData d = make_bartnik_from_curve(bg, ell, &target);
  FlowConfig cfg;
  cfg.t_max = 60.0;
  cfg.stop_tol = 1e-7;
  const FlowTrajectory tr = run(cfg, d, wp_circle(d.grid, 4.0), target);
  MESSAGE(tr.message);
  CHECK(tr.status == FlowStatus::Converged);
  CHECK(std::abs(tr.final_sample.L - d.L_bar()) / d.L_bar() < 1e-4);
  CHECK(tr.final_sample.max_abs_C < 1e-3);
  REQUIRE(tr.final_sample.d_target);
  CHECK(*tr.final_sample.d_target < 1e-3);
}

TEST_CASE("run: coupled mode keeps an exact Schwarzschild state nearly stationary") {
  const auto g = grid(30, 10.0);
  CurveState target;
  const auto bg = BackgroundMetric::schwarzschild(1.0);
  const BartnikData d = make_bartnik_from_curve(bg, schwarzschild_circle_curve(g, 1.0, 3.0), &target);
  FlowConfig cfg;
  cfg.mode = FlowMode::Coupled;
  cfg.background = bg;
  cfg.t_max = 0.05;
  const FlowTrajectory tr = run(cfg, d, target, target);
  REQUIRE(tr.final_field);
  CHECK(tr.final_field->a()(0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(tr.samples.front().max_speed < 1e-6);
  CHECK(*tr.final_sample.d_target < 1e-6);
}
