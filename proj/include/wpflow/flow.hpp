#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpflow/backgrounds.hpp"
#include "wpflow/curve.hpp"
#include "wpflow/field_solver.hpp"
#include "wpflow/masses.hpp"

namespace wpflow {

// Prescribed boundary geometry: arclength L_bar, Killing norm lambda_bar
// (odd class) and mean curvature H_bar (even class) on a grid of length L_bar.
struct BartnikData {
  std::shared_ptr<const SpectralGrid> grid;
  Vec lambda_bar;
  Vec H_bar;

  double L_bar() const { return grid->length(); }
  int n() const { return grid->n(); }
  // Throws DomainError unless lambda_bar > 0 on the interior and has
  // nonvanishing slope at both poles.
  void validate() const;
};

// Data induced on an arclength-parametrized curve by a background. The
// returned data live on a grid of length L (the curve's length), and
// `target` (if given) receives the curve re-expressed on that grid.
BartnikData make_bartnik_from_curve(const BackgroundMetric& bg, const CurveState& curve,
                                    CurveState* target = nullptr, double c_tol = 1e-6);

// |Sigma| = 2 pi int lambda_bar dtau.
double bartnik_area(const BartnikData& data);

// lambda_bar -> lambda_bar (1 + A exp(-((tau - tau0) / sigma)^p)) with p = 1
// (default) or p = 2 (`squared`); H_bar set to 2 / (sqrt(3) r_S) with
// r_S = sqrt(|Sigma| / 4 pi) of the perturbed data.
BartnikData perturb_bartnik(const BartnikData& data, double A, double tau0, double sigma,
                            bool squared = false);

enum class FlowMode { Fixed, Coupled };

struct FlowConfig {
  double kappa = 4.0;
  double cfl = 0.1;  // dt = cfl (L_bar / N)^2
  int smoothing_steps = 1000;
  bool reparametrize = true;
  FlowMode mode = FlowMode::Fixed;
  // fixed mode: the background; coupled mode: the field used for the
  // pre-flow smoothing pass
  BackgroundMetric background = BackgroundMetric::euclidean();
  SolveOptions solver;
  VMethod v_method = VMethod::LineIntegral;
  double t_max = 100.0;
  double stop_tol = 1e-8;
  double length_tol = 1e-3;
  int mass_cadence = 10;
  bool symmetric = true;
  // kappa <= 2 is rejected unless set; used only to demonstrate failure
  bool allow_weak_coupling = false;
  std::vector<double> snapshot_times;

  double dt(const SpectralGrid& grid) const {
    const double h = grid.spacing();
    return cfl * h * h;
  }
  void validate() const;
};

struct Velocity {
  Vec r;      // dr/dt, even class
  Vec theta;  // dtheta/dt = dtheta_hat/dt, odd class
  // max sqrt(r_dot^2 + r^2 theta_dot^2)
  double max_speed(const CurveState& curve) const;
};

// -(H - H_bar) n + C t + kappa pi (1/L - 1/L_bar) n, dealiased per parity
// class and, if `symmetric`, projected onto reflection-symmetric modes.
Velocity flow_rhs(const CurveState& curve, const CurveGeometry& geo, const BartnikData& data,
                  double kappa, bool symmetric = true);
Velocity flow_rhs(const CurveState& curve, const FieldSample& field, const BartnikData& data,
                  double kappa, bool symmetric = true);

// Forward Euler step; throws BlowUpError on a non-finite result.
CurveState step_euler(const CurveState& curve, const Velocity& v, double dt);

enum class FlowStatus { Converged, TMaxReached, BlowUp, SpuriousStationary };
std::string to_string(FlowStatus s);

struct FlowSample {
  long step = 0;
  double t = 0;
  double L = 0;
  double max_abs_C = 0;
  double max_speed = 0;
  MassReport masses;
  std::optional<double> d_target;
  bool ls_mode = false;
};

struct FlowSnapshot {
  double t = 0;
  CurveState curve;
  CurveGeometry geo;
  Vec coefficients;  // Legendre coefficients (coupled mode only)
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  std::vector<FlowSnapshot> snapshots;
  FlowStatus status = FlowStatus::TMaxReached;
  std::string message;
  CurveState initial;  // after reparametrization and smoothing
  CurveState final_curve;
  std::optional<LegendreField> final_field;
  FlowSample final_sample;
  double ls_switch_time = std::numeric_limits<double>::quiet_NaN();
  long steps = 0;
  std::vector<std::string> log;
};

// Called after every diagnostic evaluation of the current state (every
// step, before the Euler update).
using FlowObserver = std::function<void(long step, double t, const CurveState& curve,
                                        const CurveGeometry& geo, const Velocity& v)>;

FlowTrajectory run(const FlowConfig& config, const BartnikData& data, const CurveState& initial,
                   const std::optional<CurveState>& target = std::nullopt,
                   const FlowObserver& observer = nullptr);

}  // namespace wpflow
