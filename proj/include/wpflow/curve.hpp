#pragma once

#include <functional>
#include <memory>

#include "wpflow/field.hpp"
#include "wpflow/spectral.hpp"

namespace wpflow {

// Free boundary curve Gamma(tau) = (r(tau), theta(tau)) in the Weyl-Papapetrou
// half-plane, tau in [0, L]. r is even-class; the angle is stored as the
// odd-class deviation theta_hat = theta - pi tau / L, so the pole conditions
// theta(0) = 0, theta(L) = pi, r'(0) = r'(L) = 0 hold by construction.
struct CurveState {
  std::shared_ptr<const SpectralGrid> grid;
  Vec r;
  Vec theta_hat;

  CurveState() = default;
  CurveState(std::shared_ptr<const SpectralGrid> g, Vec r_values, Vec theta_hat_values);

  // Builds theta_hat from full theta values; theta must be 0 and pi at the ends.
  static CurveState from_polar(std::shared_ptr<const SpectralGrid> g, const Vec& r_values,
                               const Vec& theta_values);

  int size() const { return static_cast<int>(r.size()); }
  Vec theta() const;
  Vec rho() const;
  Vec z() const;

  // Throws DomainError for r <= 0 and AxisCollisionError for interior theta
  // outside (0, pi).
  void validate() const;
};

// Curve with r = R(theta), parametrized by the polar angle (theta_hat = 0).
CurveState polar_graph_curve(std::shared_ptr<const SpectralGrid> grid,
                             const std::function<double(double)>& radius_of_theta);
CurveState wp_circle(std::shared_ptr<const SpectralGrid> grid, double R);
// Ellipse with semi-axes (rho_axis, z_axis) in cylindrical coordinates,
// sampled uniformly in the polar angle theta.
CurveState wp_ellipse(std::shared_ptr<const SpectralGrid> grid, double rho_axis, double z_axis);

// Pointwise geometry of a curve in the metric described by a field sample.
struct CurveGeometry {
  // tau-derivatives of the coordinates
  Vec r_p, r_pp, theta, theta_p, theta_pp;
  Vec ell;                  // parametrization speed
  Vec t_r, t_theta;         // unit tangent
  Vec n_r, n_theta;         // outward unit normal
  Vec C;                    // embedding defect ell^{-2} ell'
  Vec H;                    // mean curvature w.r.t. the outward normal
  double L = 0;             // total length
};

CurveGeometry geometry(const CurveState& curve, const FieldSample& field);

// Redistributes the collocation points so that the curve is parametrized
// proportionally to arclength in the metric of `field`; the point set is
// unchanged up to interpolation error.
CurveState reparametrize_by_arclength(const CurveState& curve, const StaticField& field);

// Tangential flow dx/dt = C t, which drives C to zero without moving the
// point set.
CurveState smooth_to_arclength(const CurveState& curve, const StaticField& field, int steps,
                               double dt);

// int_0^L |x(tau) - xbar(tau)| dtau with the Euclidean norm in (rho, z).
double distance_to_target(const CurveState& curve, const CurveState& target);

}  // namespace wpflow
