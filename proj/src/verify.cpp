#include "wpflow/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wpflow/flow.hpp"
#include "wpflow/oracles.hpp"

namespace wpflow {

using std::numbers::pi;

namespace {

VerifyResult check(std::string name, double value, double tol, std::string detail = "") {
  return {std::move(name), value < tol, value, tol, std::move(detail)};
}

Vec sample(const SpectralGrid& g, double (*f)(double), double w) {
  Vec v(g.size());
  for (int j = 0; j < g.size(); ++j) v(j) = f(w * g.tau()(j));
  return v;
}

std::vector<VerifyResult> spectral_suite() {
  std::vector<VerifyResult> out;
  for (int n : {30, 75}) {
    const SpectralGrid g(n, pi);
    double deriv = 0, trip = 0;
    for (int k = 0; k < n; ++k) {
      const double w = k * pi / g.length();
      const Vec c = sample(g, [](double x) { return std::cos(x); }, w);
      const Vec s = sample(g, [](double x) { return std::sin(x); }, w);
      const double scale = std::max(1.0, w * w);
      deriv = std::max(deriv, (g.c1() * c + w * s).cwiseAbs().maxCoeff() / scale);
      deriv = std::max(deriv, (g.c2() * c + w * w * c).cwiseAbs().maxCoeff() / scale);
      trip = std::max(trip, (g.coeffs_to_even(g.even_to_coeffs(c)) - c).cwiseAbs().maxCoeff());
      if (k >= 1) {
        deriv = std::max(deriv, (g.d1() * s - w * c).cwiseAbs().maxCoeff() / scale);
        deriv = std::max(deriv, (g.d2() * s + w * w * s).cwiseAbs().maxCoeff() / scale);
        trip = std::max(trip, (g.coeffs_to_odd(g.odd_to_coeffs(s)) - s).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(check("spectral.derivatives.N" + std::to_string(n), deriv, 1e-12));
    out.push_back(check("spectral.round_trip.N" + std::to_string(n), trip, 1e-12));
  }
  return out;
}

FlowConfig plain(const BackgroundMetric& bg, double t_max) {
  FlowConfig cfg;
  cfg.background = bg;
  cfg.smoothing_steps = 0;
  cfg.reparametrize = false;
  cfg.t_max = t_max;
  return cfg;
}

std::vector<VerifyResult> ode_suite() {
  std::vector<VerifyResult> out;
  const int n = 30;
  {
    const auto g = std::make_shared<const SpectralGrid>(n, 2 * pi);
    const auto bg = BackgroundMetric::euclidean();
    const BartnikData d = make_bartnik_from_curve(bg, wp_circle(g, 2.0));
    std::vector<double> ts, rs;
    run(plain(bg, 10.0), d, wp_circle(d.grid, 4.0), std::nullopt,
        [&](long step, double t, const CurveState& c, const CurveGeometry&, const Velocity&) {
          if (step % 20 == 0 && t > 0) {
            ts.push_back(t);
            rs.push_back(c.r.mean());
          }
        });
    const auto oracle = euclid_circle_ode(4.0, 2.0, 4.0, ts);
    double worst = 0;
    for (size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, std::abs(rs[i] / oracle[i] - 1));
    out.push_back(check("ode.euclidean_circle_4_to_2", worst, 1e-3));
  }
  {
    const double M = 1.0;
    const auto bg = BackgroundMetric::schwarzschild(M);
    const auto g = std::make_shared<const SpectralGrid>(n, 3 * pi);
    const BartnikData d = make_bartnik_from_curve(bg, schwarzschild_circle_curve(g, M, 3.0));
    std::vector<double> ts, rs;
    double shape = 0;
    run(plain(bg, 10.0), d, schwarzschild_circle_curve(d.grid, M, 4.0), std::nullopt,
        [&](long step, double t, const CurveState& c, const CurveGeometry&, const Velocity&) {
          if (step % 20 != 0) return;
          const Vec th = c.theta();
          Vec rS(c.size());
          for (int j = 0; j < c.size(); ++j) rS(j) = wp_to_schwarzschild(M, c.r(j), th(j)).r;
          const double mean = rS.mean();
          shape = std::max(shape, (rS.array() - mean).abs().maxCoeff() / mean);
          if (t > 0) {
            ts.push_back(t);
            rs.push_back(mean);
          }
        });
    const auto oracle = schwarz_circle_ode(M, 4.0, 3.0, 4.0, ts);
    double worst = 0;
    for (size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, std::abs(rs[i] / oracle[i] - 1));
    out.push_back(check("ode.schwarzschild_circle_4_to_3", worst, 1e-3));
    out.push_back(check("ode.schwarzschild_circle_shape", shape, 1e-3));
  }
  return out;
}

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

double measured_decay_rate(const BartnikData& d, const CurveState& init, double kappa,
                           double t_end, const std::function<double(const CurveState&)>& amp) {
  FlowConfig cfg = plain(BackgroundMetric::euclidean(), t_end);
  cfg.kappa = kappa;
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

std::vector<VerifyResult> modes_suite() {
  std::vector<VerifyResult> out;
  const double Rbar = 2.0, eps = 1e-3;
  const auto g0 = std::make_shared<const SpectralGrid>(30, pi * Rbar);
  const BartnikData d = make_bartnik_from_curve(BackgroundMetric::euclidean(), wp_circle(g0, Rbar));
  const SpectralGrid& g = *d.grid;
  for (int n : {1, 2}) {
    const ModeSpec mode = linear_mode(Rbar, 4.0, n);
    const Vec b = mode.shape_on(g);
    const double bb = g.integrate_even(b.cwiseProduct(b));
    const CurveState init(d.grid, Rbar * (1.0 + eps * b.array()).matrix(), Vec::Zero(g.size()));
    const double rate =
        measured_decay_rate(d, init, 4.0, 2.0 / std::abs(mode.rate), [&](const CurveState& c) {
          return g.integrate_even((c.r.array() - Rbar).matrix().cwiseProduct(b)) / bb;
        });
    std::ostringstream os;
    os << "rate " << rate << " expected " << mode.rate;
    out.push_back(check("modes.b" + std::to_string(2 * n), std::abs(rate / mode.rate - 1), 0.05,
                        os.str()));
  }
  for (double kappa : {3.0, 4.0, 8.0}) {
    const double expected = constant_mode_rate(Rbar, kappa);
    const double rate = measured_decay_rate(d, wp_circle(d.grid, Rbar * (1 + eps)), kappa,
                                            2.0 / std::abs(expected),
                                            [&](const CurveState& c) { return c.r.mean() - Rbar; });
    std::ostringstream os;
    os << "rate " << rate << " expected " << expected;
    std::ostringstream name;
    name << "modes.constant.kappa" << kappa;
    out.push_back(check(name.str(), std::abs(rate / expected - 1), 0.05, os.str()));
  }
  return out;
}

std::vector<VerifyResult> masses_suite() {
  std::vector<VerifyResult> out;
  const double M = 1.0;
  const auto bg = BackgroundMetric::schwarzschild(M);
  const auto g = std::make_shared<const SpectralGrid>(30, 3 * pi);
  CurveState c;
  const BartnikData d = make_bartnik_from_curve(bg, schwarzschild_circle_curve(g, M, 3.0), &c);
  const LegendreField field = solve_U(c, d.lambda_bar);
  const FieldSample s = sample_on_curve(field, c);
  const double m_adm = adm_mass(field);
  const double m_h = hawking_mass(c, s);
  const double m_pn = pn_mass(c, s);
  std::ostringstream os;
  os << "m_adm " << m_adm << " m_hawking " << m_h << " m_pn " << m_pn;
  out.push_back(check("masses.schwarzschild.adm", std::abs(m_adm - M), 1e-6, os.str()));
  out.push_back(check("masses.schwarzschild.hawking", std::abs(m_h - M), 1e-6));
  out.push_back(check("masses.schwarzschild.pn", std::abs(m_pn - M), 1e-6));
  const double H = (2.0 / 3.0) * std::sqrt(1.0 / 3.0);
  out.push_back(check("masses.round_sphere_closed_form",
                      std::abs(hawking_mass(c, sample_field(bg, c)) - round_hawking_mass(3.0, H)),
                      1e-8));
  return out;
}

}  // namespace

std::vector<std::string> verify_suites() { return {"spectral", "ode", "modes", "masses"}; }

std::vector<VerifyResult> run_verify(const std::string& suite) {
  if (suite == "spectral") return spectral_suite();
  if (suite == "ode") return ode_suite();
  if (suite == "modes") return modes_suite();
  if (suite == "masses") return masses_suite();
  throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

}  // namespace wpflow
