#include "wpflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wpflow/errors.hpp"

namespace wpflow {

using std::numbers::pi;

void BartnikData::validate() const {
  if (!grid) throw std::invalid_argument("BartnikData: missing grid");
  if (lambda_bar.size() != grid->size() || H_bar.size() != grid->size())
    throw std::invalid_argument("BartnikData: profile lengths do not match the grid");
  const int n = grid->n();
  for (int j = 1; j < n; ++j)
    if (!(lambda_bar(j) > 0.0) || !std::isfinite(lambda_bar(j)))
      throw DomainError("BartnikData: lambda_bar must be positive at interior point " +
                        std::to_string(j));
  const Vec slope = grid->d1() * lambda_bar;
  if (!(slope(0) > 0.0) || !(slope(n) < 0.0))
    throw DomainError("BartnikData: lambda_bar must have nonzero slope at the poles");
  if (!H_bar.allFinite()) throw DomainError("BartnikData: H_bar is not finite");
}

BartnikData make_bartnik_from_curve(const BackgroundMetric& bg, const CurveState& curve,
                                    CurveState* target, double c_tol) {
  const FieldSample f = sample_field(bg, curve);
  const CurveGeometry geo = geometry(curve, f);
  const double c_max = geo.C.cwiseAbs().maxCoeff();
  if (!(c_max < c_tol)) {
    std::ostringstream os;
    os << "make_bartnik_from_curve: curve is not parametrized by arclength (max|C| = " << c_max
       << ")";
    throw PreconditionError(os.str());
  }
  BartnikData data;
  data.grid = std::make_shared<const SpectralGrid>(curve.grid->n(), geo.L);
  data.lambda_bar = (-f.U.array()).exp() * curve.rho().array();
  data.lambda_bar(0) = 0.0;
  data.lambda_bar(curve.grid->n()) = 0.0;
  data.H_bar = geo.H;
  if (target) *target = CurveState(data.grid, curve.r, curve.theta_hat);
  return data;
}

double bartnik_area(const BartnikData& data) {
  return 2.0 * pi * data.grid->integrate_odd(data.lambda_bar);
}

BartnikData perturb_bartnik(const BartnikData& data, double A, double tau0, double sigma,
                            bool squared) {
  if (!(A >= 0.0)) throw std::invalid_argument("perturb_bartnik: amplitude must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("perturb_bartnik: sigma must be positive");
  BartnikData out = data;
  const Vec& tau = data.grid->tau();
  for (int j = 0; j < tau.size(); ++j) {
    const double x = (tau(j) - tau0) / sigma;
    out.lambda_bar(j) *= 1.0 + A * std::exp(-(squared ? x * x : x));
  }
  for (int j = 1; j < data.grid->n(); ++j)
    if (!(out.lambda_bar(j) > 0.0))
      throw DomainError("perturb_bartnik: perturbed lambda_bar is not positive at point " +
                        std::to_string(j));
  const double r_s = std::sqrt(bartnik_area(out) / (4.0 * pi));
  out.H_bar = Vec::Constant(tau.size(), 2.0 / (std::sqrt(3.0) * r_s));
  return out;
}

void FlowConfig::validate() const {
  if (!(kappa > 2.0) && !allow_weak_coupling)
    throw std::invalid_argument("FlowConfig: kappa must exceed 2");
  if (!(cfl > 0.0) || cfl > 0.5) throw std::invalid_argument("FlowConfig: cfl must lie in (0, 0.5]");
  if (smoothing_steps < 0) throw std::invalid_argument("FlowConfig: negative smoothing_steps");
  if (!(t_max > 0.0)) throw std::invalid_argument("FlowConfig: t_max must be positive");
  if (!(stop_tol > 0.0)) throw std::invalid_argument("FlowConfig: stop_tol must be positive");
  if (!(length_tol > 0.0)) throw std::invalid_argument("FlowConfig: length_tol must be positive");
  if (mass_cadence < 1) throw std::invalid_argument("FlowConfig: mass_cadence must be >= 1");
  if (!(solver.ls_fraction > 0.0 && solver.ls_fraction <= 1.0))
    throw std::invalid_argument("FlowConfig: ls_fraction must lie in (0, 1]");
}

double Velocity::max_speed(const CurveState& curve) const {
  return (r.array().square() + (curve.r.array() * theta.array()).square()).sqrt().maxCoeff();
}

Velocity flow_rhs(const CurveState& curve, const CurveGeometry& geo, const BartnikData& data,
                  double kappa, bool symmetric) {
  const SpectralGrid& g = *curve.grid;
  if (!g.same_as(*data.grid))
    throw std::invalid_argument("flow_rhs: curve and Bartnik data live on different grids");
  const double length_term = kappa * pi * (1.0 / geo.L - 1.0 / data.L_bar());
  const Vec normal = (-(geo.H - data.H_bar)).array() + length_term;
  Velocity v;
  v.r = normal.cwiseProduct(geo.n_r) + geo.C.cwiseProduct(geo.t_r);
  v.theta = normal.cwiseProduct(geo.n_theta) + geo.C.cwiseProduct(geo.t_theta);
  v.r = g.dealias(v.r, Parity::Even);
  v.theta = g.dealias(v.theta, Parity::Odd);
  if (symmetric) {
    v.r = g.project_symmetric(v.r, Parity::Even);
    v.theta = g.project_symmetric(v.theta, Parity::Odd);
  }
  return v;
}

Velocity flow_rhs(const CurveState& curve, const FieldSample& field, const BartnikData& data,
                  double kappa, bool symmetric) {
  return flow_rhs(curve, geometry(curve, field), data, kappa, symmetric);
}

CurveState step_euler(const CurveState& curve, const Velocity& v, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_euler: dt must be positive");
  CurveState next(curve.grid, curve.r + dt * v.r, curve.theta_hat + dt * v.theta);
  if (!next.r.allFinite() || !next.theta_hat.allFinite() || next.r.cwiseAbs().maxCoeff() > 1e12)
    throw BlowUpError("step_euler: non-finite or unbounded curve", 0);
  return next;
}

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return "converged";
    case FlowStatus::TMaxReached: return "t_max_reached";
    case FlowStatus::BlowUp: return "blow_up";
    case FlowStatus::SpuriousStationary: return "spurious_stationary";
  }
  return "unknown";
}

namespace {

struct FieldState {
  FieldSample sample;
  std::optional<LegendreField> legendre;
};

}  // namespace

FlowTrajectory run(const FlowConfig& config, const BartnikData& data, const CurveState& initial,
                   const std::optional<CurveState>& target, const FlowObserver& observer) {
  config.validate();
  data.validate();
  if (!initial.grid->same_as(*data.grid))
    throw std::invalid_argument("run: initial curve must live on the Bartnik data grid");
  if (target && !target->grid->same_as(*data.grid))
    throw std::invalid_argument("run: target curve must live on the Bartnik data grid");

  FlowTrajectory traj;
  const double dt = config.dt(*data.grid);
  const bool coupled = config.mode == FlowMode::Coupled;

  CurveState curve = initial;
  try {
    // an already arclength-parametrized curve is left alone, so that exact
    // stationary states stay exact
    const CurveGeometry geo0 = geometry(curve, sample_field(config.background, curve));
    const bool parametrized = geo0.C.cwiseAbs().maxCoeff() < config.stop_tol;
    if (config.reparametrize && !parametrized)
      curve = reparametrize_by_arclength(curve, config.background);
    if (config.smoothing_steps > 0 && !parametrized)
      curve = smooth_to_arclength(curve, config.background, config.smoothing_steps, dt);
  } catch (const std::exception& e) {
    traj.status = FlowStatus::BlowUp;
    traj.message = std::string("pre-flow smoothing failed: ") + e.what();
    traj.initial = traj.final_curve = curve;
    return traj;
  }
  traj.initial = curve;

  SolveOptions solver = config.solver;
  std::vector<double> pending = config.snapshot_times;
  std::sort(pending.begin(), pending.end());
  size_t next_snapshot = 0;

  double t = 0.0;
  long step = 0;
  for (;; ++step) {
    FieldState fs;
    CurveGeometry geo;
    Velocity v;
    try {
      if (coupled) {
        if (!solver.force_ls && curve.r.minCoeff() < solver.r_switch) {
          solver.force_ls = true;
          traj.ls_switch_time = t;
          std::ostringstream os;
          os << "t=" << t << ": min r = " << curve.r.minCoeff()
             << " below r_switch; least-squares mode from here on";
          traj.log.push_back(os.str());
        }
        fs.legendre = solve_U(curve, data.lambda_bar, solver);
        fs.sample = sample_on_curve(*fs.legendre, curve, config.v_method);
      } else {
        fs.sample = sample_field(config.background, curve);
      }
      geo = geometry(curve, fs.sample);
      v = flow_rhs(curve, geo, data, config.kappa, config.symmetric);
    } catch (const std::exception& e) {
      traj.status = FlowStatus::BlowUp;
      traj.message = "step " + std::to_string(step) + ": " + e.what();
      break;
    }
    if (observer) observer(step, t, curve, geo, v);

    const double speed = v.max_speed(curve);
    const bool converged = speed < config.stop_tol;
    const bool out_of_time = t >= config.t_max;
    const bool finished = converged || out_of_time;

    if (step % config.mass_cadence == 0 || finished) {
      FlowSample s;
      s.step = step;
      s.t = t;
      s.L = geo.L;
      s.max_abs_C = geo.C.cwiseAbs().maxCoeff();
      s.max_speed = speed;
      const double m_adm = coupled ? adm_mass(*fs.legendre) : config.background.mass();
      s.masses = mass_report(t, m_adm, curve, fs.sample, geo);
      if (target) s.d_target = distance_to_target(curve, *target);
      s.ls_mode = coupled && fs.legendre->ls_mode();
      traj.samples.push_back(s);
      traj.final_sample = s;
    }
    while (next_snapshot < pending.size() && t >= pending[next_snapshot]) {
      FlowSnapshot snap{t, curve, geo, coupled ? fs.legendre->a() : Vec()};
      traj.snapshots.push_back(std::move(snap));
      ++next_snapshot;
    }
    if (coupled) traj.final_field = fs.legendre;

    if (converged) {
      const double rel = std::abs(geo.L - data.L_bar()) / data.L_bar();
      traj.status = rel < config.length_tol ? FlowStatus::Converged : FlowStatus::SpuriousStationary;
      std::ostringstream os;
      os << "max speed " << speed << " below " << config.stop_tol << " at t=" << t
         << "; |L - L_bar| / L_bar = " << rel;
      traj.message = os.str();
      break;
    }
    if (out_of_time) {
      traj.status = FlowStatus::TMaxReached;
      std::ostringstream os;
      os << "t_max reached with max speed " << speed;
      traj.message = os.str();
      break;
    }
    try {
      curve = step_euler(curve, v, dt);
      curve.validate();
    } catch (const std::exception& e) {
      traj.status = FlowStatus::BlowUp;
      traj.message = "step " + std::to_string(step) + ": " + e.what();
      break;
    }
    t = (step + 1) * dt;
  }
  traj.final_curve = curve;
  traj.steps = step;
  if (!pending.empty() && next_snapshot < pending.size() && traj.status != FlowStatus::BlowUp) {
    // snapshot times past the end: record the terminal state once
    try {
      const FieldSample f = coupled && traj.final_field ? sample_on_curve(*traj.final_field, curve, config.v_method)
                                                        : sample_field(config.background, curve);
      traj.snapshots.push_back({t, curve, geometry(curve, f),
                                traj.final_field ? traj.final_field->a() : Vec()});
    } catch (const std::exception&) {
    }
  }
  return traj;
}

}  // namespace wpflow
