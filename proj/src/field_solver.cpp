#include "wpflow/field_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>

#include "wpflow/errors.hpp"

namespace wpflow {

namespace {

// P_0..P_n(x) and their x-derivatives.
void legendre(int n, double x, Vec& p, Vec& dp) {
  p.resize(n + 1);
  dp.resize(n + 1);
  p(0) = 1.0;
  dp(0) = 0.0;
  if (n == 0) return;
  p(1) = x;
  dp(1) = 1.0;
  for (int k = 1; k < n; ++k) {
    p(k + 1) = ((2 * k + 1) * x * p(k) - k * p(k - 1)) / (k + 1);
    dp(k + 1) = dp(k - 1) + (2 * k + 1) * p(k);
  }
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("Legendre field: evaluation requires r > 0, got " + std::to_string(r));
}

}  // namespace

LegendreField::LegendreField(Vec a, bool ls_mode, double residual)
    : a_(std::move(a)), ls_mode_(ls_mode), residual_(residual) {
  if (a_.size() == 0) throw std::invalid_argument("LegendreField: empty coefficient vector");
}

LegendreField::UValue LegendreField::eval_U(double r, double theta) const {
  check_radius(r);
  const int n = order();
  Vec p, dp;
  legendre(n, std::cos(theta), p, dp);
  const double s = std::sin(theta);
  UValue out;
  double rk = 1.0 / r;  // r^{-(k+1)}
  for (int k = 0; k <= n; ++k) {
    out.U -= a_(k) * rk * p(k);
    out.U_r += a_(k) * (k + 1) * rk / r * p(k);
    out.U_theta += a_(k) * rk * s * dp(k);
    rk /= r;
  }
  return out;
}

LegendreField::VValue LegendreField::eval_V(double r, double theta) const {
  check_radius(r);
  const int n = order();
  Vec p, dp;
  legendre(n + 1, std::cos(theta), p, dp);
  Vec b(n + 1);
  double rk = 1.0 / r;
  for (int k = 0; k <= n; ++k) {
    b(k) = a_(k) * (k + 1) * rk;
    rk /= r;
  }
  VValue out;
  for (int k = 0; k <= n; ++k) {
    if (b(k) == 0.0) continue;
    double row = 0.0;
    for (int l = 0; l <= n; ++l)
      row += b(l) * (p(k) * p(l) - p(k + 1) * p(l + 1)) / (k + l + 2);
    out.V -= b(k) * row;
  }
  const UValue u = eval_U(r, theta);
  v_partials_from_u(r, theta, u.U_r, u.U_theta, out.V_r, out.V_theta);
  return out;
}

FieldPoint LegendreField::evaluate(double r, double theta) const {
  const UValue u = eval_U(r, theta);
  const VValue v = eval_V(r, theta);
  return FieldPoint{u.U, v.V, u.U_r, u.U_theta, v.V_r, v.V_theta};
}

Vec boundary_values_U(const CurveState& curve, const Vec& lambda_bar) {
  curve.validate();
  const SpectralGrid& g = *curve.grid;
  const Vec rho = curve.rho();
  Vec ratio;
  try {
    ratio = g.divide_odd(lambda_bar, rho);
  } catch (const SingularQuotientError& e) {
    throw DomainError(std::string("boundary_values_U: ") + e.what());
  }
  Vec u(ratio.size());
  for (int j = 0; j < ratio.size(); ++j) {
    if (!(ratio(j) > 0.0) || !std::isfinite(ratio(j)))
      throw DomainError("boundary_values_U: lambda / (r sin theta) is not positive at point " +
                        std::to_string(j));
    u(j) = -std::log(ratio(j));
  }
  return u;
}

LegendreField solve_U(const CurveState& curve, const Vec& lambda_bar, const SolveOptions& opts) {
  const Vec u = boundary_values_U(curve, lambda_bar);
  const int m = curve.size();
  const Vec th = curve.theta();
  const double r_min = curve.r.minCoeff();
  const bool ls = opts.force_ls || r_min < opts.r_switch;
  const int cols = ls ? std::max(1, static_cast<int>(std::floor(opts.ls_fraction * m))) : m;

  // columns scaled by r_min^{n+1}: entries are -(r_min / r_j)^{n+1} P_n
  Mat A(m, cols);
  Vec p, dp;
  for (int j = 0; j < m; ++j) {
    legendre(cols - 1, std::cos(th(j)), p, dp);
    const double q = r_min / curve.r(j);
    double qk = q;
    for (int n = 0; n < cols; ++n) {
      A(j, n) = -qk * p(n);
      qk *= q;
    }
  }

  Vec scaled;
  if (!ls) {
    Eigen::PartialPivLU<Mat> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > opts.min_rcond)) {
      std::ostringstream os;
      os << "solve_U: collocation matrix is numerically singular (rcond = " << rcond << ")";
      throw SolverError(os.str(), rcond);
    }
    scaled = lu.solve(u);
  } else {
    Eigen::ColPivHouseholderQR<Mat> qr(A);
    if (qr.rank() < cols) {
      const double rcond = std::abs(qr.matrixR()(cols - 1, cols - 1) / qr.matrixR()(0, 0));
      throw SolverError("solve_U: least-squares system is rank deficient", rcond);
    }
    scaled = qr.solve(u);
  }
  const double residual = (A * scaled - u).cwiseAbs().maxCoeff();

  Vec a = Vec::Zero(m);
  double scale = r_min;
  for (int n = 0; n < cols; ++n) {
    a(n) = scaled(n) * scale;
    scale *= r_min;
  }
  if (!a.allFinite()) throw SolverError("solve_U: non-finite coefficients", 0.0);
  LegendreField field(a, ls, residual);
  if (ls && residual > opts.ls_residual_warn) {
    std::ostringstream os;
    os << "least-squares residual " << residual << " exceeds " << opts.ls_residual_warn;
    field.add_warning(os.str());
  }
  return field;
}

FieldSample sample_on_curve(const LegendreField& field, const CurveState& curve, VMethod method) {
  const int m = curve.size();
  const Vec th = curve.theta();
  FieldSample s = FieldSample::zeros(m);
  for (int j = 0; j < m; ++j) {
    const auto u = field.eval_U(curve.r(j), th(j));
    s.U(j) = u.U;
    s.U_r(j) = u.U_r;
    s.U_theta(j) = u.U_theta;
    v_partials_from_u(curve.r(j), th(j), u.U_r, u.U_theta, s.V_r(j), s.V_theta(j));
  }
  s.U_theta(0) = s.V_theta(0) = 0.0;
  s.U_theta(m - 1) = s.V_theta(m - 1) = 0.0;

  if (method == VMethod::DoubleSum) {
    for (int j = 0; j < m; ++j) s.V(j) = field.eval_V(curve.r(j), th(j)).V;
  } else {
    const SpectralGrid& g = *curve.grid;
    const Vec rp = g.c1() * curve.r;
    const Vec tp = (g.d1() * curve.theta_hat).array() + std::numbers::pi / g.length();
    Vec dv = s.V_r.cwiseProduct(rp) + s.V_theta.cwiseProduct(tp);
    dv(0) = dv(m - 1) = 0.0;
    s.V = g.antiderivative_odd(dv);
  }
  return s;
}

}  // namespace wpflow
