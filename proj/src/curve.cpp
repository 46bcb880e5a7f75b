#include "wpflow/curve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

// pchip.hpp in Boost 1.74 calls isnan unqualified
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>

#include "wpflow/backgrounds.hpp"
#include "wpflow/errors.hpp"

namespace wpflow {

using std::numbers::pi;

CurveState::CurveState(std::shared_ptr<const SpectralGrid> g, Vec r_values, Vec theta_hat_values)
    : grid(std::move(g)), r(std::move(r_values)), theta_hat(std::move(theta_hat_values)) {
  if (!grid) throw std::invalid_argument("CurveState: null grid");
  if (r.size() != grid->size() || theta_hat.size() != grid->size())
    throw std::invalid_argument("CurveState: value arrays do not match the grid");
  theta_hat(0) = 0.0;
  theta_hat(grid->n()) = 0.0;
}

CurveState CurveState::from_polar(std::shared_ptr<const SpectralGrid> g, const Vec& r_values,
                                  const Vec& theta_values) {
  if (!g) throw std::invalid_argument("CurveState: null grid");
  if (theta_values.size() != g->size())
    throw std::invalid_argument("CurveState: value arrays do not match the grid");
  const int n = g->n();
  if (std::abs(theta_values(0)) > 1e-12 || std::abs(theta_values(n) - pi) > 1e-12)
    throw DomainError("CurveState: theta must run from 0 to pi");
  Vec th = theta_values - (pi / g->length()) * g->tau();
  return CurveState(g, r_values, th);
}

Vec CurveState::theta() const { return theta_hat + (pi / grid->length()) * grid->tau(); }

Vec CurveState::rho() const { return r.array() * theta().array().sin(); }

Vec CurveState::z() const { return r.array() * theta().array().cos(); }

void CurveState::validate() const {
  const int n = grid->n();
  const Vec th = theta();
  for (int j = 0; j <= n; ++j) {
    if (!std::isfinite(r(j)) || !std::isfinite(th(j)))
      throw DomainError("curve: non-finite coordinate at point " + std::to_string(j));
    if (!(r(j) > 0.0)) throw DomainError("curve: nonpositive r at point " + std::to_string(j));
    if (j > 0 && j < n && !(th(j) > 0.0 && th(j) < pi))
      throw AxisCollisionError("curve: interior point " + std::to_string(j) +
                               " touches the axis (theta = " + std::to_string(th(j)) + ")");
  }
}

CurveState polar_graph_curve(std::shared_ptr<const SpectralGrid> grid,
                             const std::function<double(double)>& radius_of_theta) {
  const int m = grid->size();
  Vec r(m);
  for (int j = 0; j < m; ++j) r(j) = radius_of_theta(pi * grid->tau()(j) / grid->length());
  return CurveState(grid, r, Vec::Zero(m));
}

CurveState wp_circle(std::shared_ptr<const SpectralGrid> grid, double R) {
  if (!(R > 0)) throw DomainError("wp_circle: radius must be positive");
  return polar_graph_curve(std::move(grid), [R](double) { return R; });
}

CurveState wp_ellipse(std::shared_ptr<const SpectralGrid> grid, double rho_axis, double z_axis) {
  if (!(rho_axis > 0 && z_axis > 0)) throw DomainError("wp_ellipse: axes must be positive");
  return polar_graph_curve(std::move(grid), [=](double th) {
    const double s = std::sin(th) / rho_axis, c = std::cos(th) / z_axis;
    return 1.0 / std::sqrt(s * s + c * c);
  });
}

CurveGeometry geometry(const CurveState& curve, const FieldSample& f) {
  curve.validate();
  const SpectralGrid& g = *curve.grid;
  const int m = g.size();
  const double slope = pi / g.length();

  CurveGeometry out;
  const Vec& r = curve.r;
  out.theta = curve.theta();
  out.r_p = g.c1() * r;
  out.r_pp = g.c2() * r;
  out.theta_p = (g.d1() * curve.theta_hat).array() + slope;
  out.theta_pp = g.d2() * curve.theta_hat;

  const Vec sin_th = out.theta.array().sin();
  // r'/sin(theta) is a ratio of odd-class functions; regularize at the poles
  const Vec rp_over_sin = g.divide_odd(out.r_p, sin_th);

  out.ell.resize(m);
  out.t_r.resize(m);
  out.t_theta.resize(m);
  out.n_r.resize(m);
  out.n_theta.resize(m);
  out.C.resize(m);
  out.H.resize(m);

  for (int j = 0; j < m; ++j) {
    const double rj = r(j), rp = out.r_p(j), rpp = out.r_pp(j);
    const double th = out.theta(j), tp = out.theta_p(j), tpp = out.theta_pp(j);
    const double s = std::sin(th), c = std::cos(th);
    const double Ur = f.U_r(j), Ut = f.U_theta(j);
    const double conf = std::exp(2.0 * (f.V(j) - f.U(j)));
    const double speed2 = rp * rp + rj * rj * tp * tp;
    const double ell = std::sqrt(conf * speed2);
    if (!(ell > 0.0) || !std::isfinite(ell))
      throw DomainError("geometry: degenerate speed at point " + std::to_string(j));
    const double inv = 1.0 / ell, inv3 = inv * inv * inv;

    out.ell(j) = ell;
    out.t_r(j) = inv * rp;
    out.t_theta(j) = inv * tp;
    out.n_r(j) = inv * rj * tp;
    out.n_theta(j) = -inv * rp / rj;

    const double radial = rj * s * Ur * Ur - s / rj * Ut * Ut;
    const double mixed = 2.0 * s * Ur * Ut;

    // C = ell^{-2} ell', with V' eliminated through the V relations
    const double dlog_u_v = -rp * Ur - tp * Ut + radial * (rp * s - rj * tp * c) +
                            mixed * (rp * c + rj * tp * s);
    out.C(j) = conf * inv3 * (rp * rpp + rj * rp * tp * tp + rj * rj * tp * tpp) + inv * dlog_u_v;

    const double curvature = conf * inv3 * (-rj * rpp * tp + 2.0 * rp * rp * tp + rj * rp * tpp +
                                            rj * rj * tp * tp * tp);
    const double bracket = -rp_over_sin(j) * c / rj + tp + 2.0 * (rp / rj * Ut - rj * tp * Ur) +
                           radial * (rp * c + rj * tp * s) - mixed * (rp * s - rj * tp * c);
    out.H(j) = curvature + inv * bracket;
  }
  out.L = g.integrate_even(out.ell);
  return out;
}

CurveState reparametrize_by_arclength(const CurveState& curve, const StaticField& field) {
  curve.validate();
  const SpectralGrid& g = *curve.grid;
  const int n = g.n();
  const double len = g.length();
  const double slope = pi / len;
  const Vec rc = g.even_to_coeffs(curve.r);
  const Vec tc = g.odd_to_coeffs(curve.theta_hat);

  auto position = [&](double s) {
    return PolarPoint{g.eval_even(rc, s), g.eval_odd(tc, s) + slope * s};
  };

  // speed on a 20N-interval grid; Simpson pairs give tau(s) on 10N intervals
  const int fine = 20 * n;
  std::vector<double> speed(fine + 1);
  double mean = 0.0;
  for (int k = 0; k <= fine; ++k) {
    const double s = len * k / fine;
    const PolarPoint p = position(s);
    const double rp = g.eval_even_derivative(rc, s);
    const double tp = g.eval_odd_derivative(tc, s) + slope;
    const FieldPoint fp = field.evaluate(p.r, p.theta);
    speed[k] = std::exp(fp.V - fp.U) * std::sqrt(rp * rp + p.r * p.r * tp * tp);
    if (!std::isfinite(speed[k]))
      throw ReparametrizationError("reparametrize: non-finite speed at s = " + std::to_string(s));
    mean += speed[k];
  }
  mean /= (fine + 1);
  for (int k = 0; k <= fine; ++k) {
    if (!(speed[k] > 1e-10 * mean))
      throw ReparametrizationError("reparametrize: speed vanishes near s = " +
                                   std::to_string(len * k / fine) + " (repeated points)");
  }

  const int coarse = fine / 2;
  std::vector<double> s_nodes(coarse + 1), tau_nodes(coarse + 1);
  const double h = len / fine;
  tau_nodes[0] = 0.0;
  s_nodes[0] = 0.0;
  for (int k = 1; k <= coarse; ++k) {
    tau_nodes[k] =
        tau_nodes[k - 1] + h / 3.0 * (speed[2 * k - 2] + 4.0 * speed[2 * k - 1] + speed[2 * k]);
    s_nodes[k] = 2.0 * k * h;
    if (!(tau_nodes[k] > tau_nodes[k - 1]))
      throw ReparametrizationError("reparametrize: computed arclength is not monotone");
  }
  const double total = tau_nodes.back();
  const boost::math::interpolators::pchip<std::vector<double>> inverse(std::move(tau_nodes),
                                                                        std::move(s_nodes));

  Vec r_new(n + 1), th_new(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double s = (j == 0) ? 0.0 : (j == n ? len : inverse(total * j / n));
    const PolarPoint p = position(s);
    r_new(j) = p.r;
    th_new(j) = p.theta - slope * g.tau()(j);
  }
  // interpolation roughness lands in the top modes, which the dealiased
  // smoothing flow cannot reach
  return CurveState(curve.grid, g.dealias(r_new, Parity::Even), g.dealias(th_new, Parity::Odd));
}

CurveState smooth_to_arclength(const CurveState& curve, const StaticField& field, int steps,
                               double dt) {
  if (steps < 0) throw std::invalid_argument("smooth_to_arclength: negative step count");
  if (!(dt > 0)) throw std::invalid_argument("smooth_to_arclength: dt must be positive");
  const SpectralGrid& g = *curve.grid;
  CurveState cur = curve;
  for (int step = 0; step < steps; ++step) {
    CurveGeometry geo;
    try {
      geo = geometry(cur, sample_field(field, cur));
    } catch (const DomainError& e) {
      throw BlowUpError(std::string("smooth_to_arclength: ") + e.what(), step);
    } catch (const SingularQuotientError& e) {
      throw BlowUpError(std::string("smooth_to_arclength: ") + e.what(), step);
    }
    const Vec vr = g.dealias(geo.C.cwiseProduct(geo.t_r), Parity::Even);
    const Vec vt = g.dealias(geo.C.cwiseProduct(geo.t_theta), Parity::Odd);
    cur.r += dt * vr;
    cur.theta_hat += dt * vt;
    if (!cur.r.allFinite() || !cur.theta_hat.allFinite() || cur.r.cwiseAbs().maxCoeff() > 1e12)
      throw BlowUpError("smooth_to_arclength: instability at step " + std::to_string(step), step);
  }
  return cur;
}

double distance_to_target(const CurveState& curve, const CurveState& target) {
  if (!curve.grid->same_as(*target.grid))
    throw std::invalid_argument("distance_to_target: curves live on different grids");
  const Vec drho = curve.rho() - target.rho();
  const Vec dz = curve.z() - target.z();
  const Vec norm = (drho.array().square() + dz.array().square()).sqrt();
  const double h = curve.grid->spacing();
  return h * (norm.sum() - 0.5 * (norm(0) + norm(norm.size() - 1)));
}

}  // namespace wpflow
