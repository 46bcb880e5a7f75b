#pragma once

#include <string>
#include <vector>

#include "wpflow/curve.hpp"
#include "wpflow/field.hpp"

namespace wpflow {

// Exterior harmonic field U = -sum_n a_n r^{-(n+1)} P_n(cos theta) and the
// matching V from the quadratic double sum.
class LegendreField : public StaticField {
 public:
  struct UValue {
    double U = 0, U_r = 0, U_theta = 0;
  };
  struct VValue {
    double V = 0, V_r = 0, V_theta = 0;
  };

  LegendreField() = default;
  explicit LegendreField(Vec a, bool ls_mode = false, double residual = 0.0);

  const Vec& a() const { return a_; }
  int order() const { return static_cast<int>(a_.size()) - 1; }
  bool ls_mode() const { return ls_mode_; }
  // max-norm residual of the collocation equations at solve time
  double residual() const { return residual_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  UValue eval_U(double r, double theta) const;
  // V by the double sum; V_r, V_theta from the first-order relations.
  VValue eval_V(double r, double theta) const;
  FieldPoint evaluate(double r, double theta) const override;

 private:
  Vec a_;
  bool ls_mode_ = false;
  double residual_ = 0.0;
  std::vector<std::string> warnings_;
};

struct SolveOptions {
  double r_switch = 1.7;
  double ls_fraction = 0.4;
  bool force_ls = false;
  // smallest acceptable reciprocal condition number of the square system
  double min_rcond = 1e-15;
  // least-squares residuals above this are recorded as warnings
  double ls_residual_warn = 1e-4;
};

// Dirichlet data U = -ln(lambda / (r sin theta)) along the curve.
Vec boundary_values_U(const CurveState& curve, const Vec& lambda_bar);

LegendreField solve_U(const CurveState& curve, const Vec& lambda_bar,
                      const SolveOptions& opts = {});

enum class VMethod { LineIntegral, DoubleSum };

// Field values at the collocation points; U_theta = V_theta = 0 at the poles.
// LineIntegral integrates dV = V_r dr + V_theta dtheta along the curve from
// the tau = 0 pole.
FieldSample sample_on_curve(const LegendreField& field, const CurveState& curve,
                            VMethod method = VMethod::LineIntegral);

}  // namespace wpflow
