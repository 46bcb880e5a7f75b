#pragma once

#include "wpflow/curve.hpp"
#include "wpflow/field.hpp"
#include "wpflow/field_solver.hpp"

namespace wpflow {

struct MassReport {
  double t = 0;
  double m_adm = 0;
  double m_hawking = 0;
  double m_pn = 0;
  double area = 0;
};

// Monopole coefficient a_0.
double adm_mass(const LegendreField& field);

// Area 2 pi int ell r sin(theta) e^{-U} dtau of the surface of revolution.
double surface_area(const CurveState& curve, const FieldSample& field);

double hawking_mass(const CurveState& curve, const FieldSample& field);
// Same, reusing an already computed geometry.
double hawking_mass(const CurveState& curve, const FieldSample& field, const CurveGeometry& geo);

// Flux of the lapse through the curve, 1/2 int (r^2 theta' U_r - r' U_theta) sin(theta).
double pn_mass(const CurveState& curve, const FieldSample& field);

// Hawking mass of a round sphere of area radius R and mean curvature H.
inline double round_hawking_mass(double R, double H) { return 0.5 * R * (1.0 - H * H * R * R / 4.0); }

MassReport mass_report(double t, double m_adm, const CurveState& curve, const FieldSample& field,
                       const CurveGeometry& geo);

}  // namespace wpflow
