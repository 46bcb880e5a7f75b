#pragma once

#include "wpflow/spectral.hpp"

namespace wpflow {

// Metric potentials U, V of the Weyl-Papapetrou ansatz and their first
// partials with respect to the polar coordinates (r, theta).
struct FieldPoint {
  double U = 0, V = 0;
  double U_r = 0, U_theta = 0;
  double V_r = 0, V_theta = 0;
};

// Field values at the collocation points of a curve.
struct FieldSample {
  Vec U, V, U_r, U_theta, V_r, V_theta;

  static FieldSample zeros(int size);
  FieldPoint at(int j) const;
  void set(int j, const FieldPoint& p);
};

// Anything that can supply (U, V) and partials off the curve: closed-form
// backgrounds and solved Legendre fields.
class StaticField {
 public:
  virtual ~StaticField() = default;
  virtual FieldPoint evaluate(double r, double theta) const = 0;
};

// V partials from the first-order Weyl-Papapetrou relations.
void v_partials_from_u(double r, double theta, double U_r, double U_theta, double& V_r,
                       double& V_theta);

}  // namespace wpflow
