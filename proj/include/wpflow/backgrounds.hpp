#pragma once

#include <memory>
#include <string>
#include <variant>

#include "wpflow/curve.hpp"
#include "wpflow/field.hpp"

namespace wpflow {

struct Euclidean {};
struct Schwarzschild {
  double M;
};
struct ZipoyVoorhees {
  double M;
  double delta;
};
struct CurzonChazy {
  double M;
};

// Closed-form static axisymmetric vacuum solution in Weyl-Papapetrou form.
class BackgroundMetric : public StaticField {
 public:
  using Variant = std::variant<Euclidean, Schwarzschild, ZipoyVoorhees, CurzonChazy>;

  BackgroundMetric() = default;
  explicit BackgroundMetric(Variant v);

  static BackgroundMetric euclidean() { return BackgroundMetric(Euclidean{}); }
  static BackgroundMetric schwarzschild(double M) { return BackgroundMetric(Schwarzschild{M}); }
  static BackgroundMetric zipoy_voorhees(double M, double delta) {
    return BackgroundMetric(ZipoyVoorhees{M, delta});
  }
  static BackgroundMetric curzon_chazy(double M) { return BackgroundMetric(CurzonChazy{M}); }

  // Parses "euclidean", "schwarzschild:M", "zv:M:delta", "cc:M".
  static BackgroundMetric parse(const std::string& text);
  std::string to_string() const;

  const Variant& variant() const { return v_; }
  // ADM mass (monopole coefficient of U).
  double mass() const;

  // Throws DomainError on or within 1e-9 of the singular set.
  FieldPoint evaluate(double r, double theta) const override;

 private:
  Variant v_ = Euclidean{};
};

FieldSample sample_field(const StaticField& field, const CurveState& curve);

struct PolarPoint {
  double r;
  double theta;
};

PolarPoint schwarzschild_to_wp(double M, double r_s, double theta_s);
PolarPoint wp_to_schwarzschild(double M, double r, double theta);

// Schwarzschild coordinate sphere r_S = R, parametrized proportionally to
// arclength on the grid's [0, L].
CurveState schwarzschild_circle_curve(std::shared_ptr<const SpectralGrid> grid, double M,
                                      double R);

}  // namespace wpflow
