#include "wpflow/field.hpp"

#include <cmath>

namespace wpflow {

FieldSample FieldSample::zeros(int size) {
  FieldSample s;
  s.U = s.V = s.U_r = s.U_theta = s.V_r = s.V_theta = Vec::Zero(size);
  return s;
}

FieldPoint FieldSample::at(int j) const {
  return FieldPoint{U(j), V(j), U_r(j), U_theta(j), V_r(j), V_theta(j)};
}

void FieldSample::set(int j, const FieldPoint& p) {
  U(j) = p.U;
  V(j) = p.V;
  U_r(j) = p.U_r;
  U_theta(j) = p.U_theta;
  V_r(j) = p.V_r;
  V_theta(j) = p.V_theta;
}

void v_partials_from_u(double r, double theta, double U_r, double U_theta, double& V_r,
                       double& V_theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  V_r = r * s * s * U_r * U_r + 2.0 * s * c * U_r * U_theta - s * s / r * U_theta * U_theta;
  V_theta = -r * r * s * c * U_r * U_r + 2.0 * r * s * s * U_r * U_theta + s * c * U_theta * U_theta;
}

}  // namespace wpflow
