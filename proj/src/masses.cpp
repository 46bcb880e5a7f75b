#include "wpflow/masses.hpp"

#include <cmath>
#include <numbers>

namespace wpflow {

using std::numbers::pi;

namespace {

// ell r sin(theta) e^{-U}: odd-class, integrated with the sine series.
Vec area_density(const CurveState& curve, const FieldSample& field, const CurveGeometry& geo) {
  return geo.ell.array() * curve.rho().array() * (-field.U.array()).exp();
}

}  // namespace

double adm_mass(const LegendreField& field) { return field.a()(0); }

double surface_area(const CurveState& curve, const FieldSample& field) {
  const CurveGeometry geo = geometry(curve, field);
  return 2.0 * pi * curve.grid->integrate_odd(area_density(curve, field, geo));
}

double hawking_mass(const CurveState& curve, const FieldSample& field, const CurveGeometry& geo) {
  const SpectralGrid& g = *curve.grid;
  const Vec w = area_density(curve, field, geo);
  const double area8 = g.integrate_odd(w) / 8.0;
  const double willmore8 = g.integrate_odd(geo.H.array().square().matrix().cwiseProduct(w)) / 8.0;
  return std::sqrt(area8) * (1.0 - willmore8);
}

double hawking_mass(const CurveState& curve, const FieldSample& field) {
  return hawking_mass(curve, field, geometry(curve, field));
}

double pn_mass(const CurveState& curve, const FieldSample& field) {
  const SpectralGrid& g = *curve.grid;
  const Vec th = curve.theta();
  const Vec rp = g.c1() * curve.r;
  const Vec tp = (g.d1() * curve.theta_hat).array() + pi / g.length();
  Vec flux(curve.size());
  for (int j = 0; j < curve.size(); ++j)
    flux(j) = (curve.r(j) * curve.r(j) * tp(j) * field.U_r(j) - rp(j) * field.U_theta(j)) *
              std::sin(th(j));
  flux(0) = flux(curve.size() - 1) = 0.0;
  return 0.5 * g.integrate_odd(flux);
}

MassReport mass_report(double t, double m_adm, const CurveState& curve, const FieldSample& field,
                       const CurveGeometry& geo) {
  MassReport rep;
  rep.t = t;
  rep.m_adm = m_adm;
  rep.m_hawking = hawking_mass(curve, field, geo);
  rep.m_pn = pn_mass(curve, field);
  rep.area = 2.0 * pi * curve.grid->integrate_odd(area_density(curve, field, geo));
  return rep;
}

}  // namespace wpflow
