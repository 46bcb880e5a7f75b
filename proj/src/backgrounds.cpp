#include "wpflow/backgrounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wpflow/errors.hpp"

namespace wpflow {

using std::numbers::pi;

namespace {

constexpr double kGuard = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& s, const std::string& context) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number '" + s + "' in '" + context + "'");
  }
}

// Cylindrical partials (f_rho, f_z) -> polar partials (f_r, f_theta).
void to_polar(double r, double theta, double f_rho, double f_z, double& f_r, double& f_theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  f_r = f_rho * s + f_z * c;
  f_theta = r * (f_rho * c - f_z * s);
}

FieldPoint weyl_rod(double M, double delta, double r, double theta) {
  const double m = M / delta;
  const double rho = r * std::sin(theta), z = r * std::cos(theta);
  // distance to the singular rod rho = 0, |z| <= m
  const double dz = std::max(0.0, std::abs(z) - m);
  if (std::hypot(rho, dz) < kGuard)
    throw DomainError("background: point (r=" + std::to_string(r) + ", theta=" +
                      std::to_string(theta) + ") lies on the singular segment");
  const double Rp = std::hypot(rho, z + m), Rm = std::hypot(rho, z - m);
  const double S = Rp + Rm;
  const double D = (S - 2.0 * m) * (S + 2.0 * m);

  FieldPoint p;
  p.U = 0.5 * delta * std::log((S - 2.0 * m) / (S + 2.0 * m));
  p.V = 0.5 * delta * delta * std::log(D / (4.0 * Rp * Rm));

  const double S_rho = rho / Rp + rho / Rm;
  const double S_z = (z + m) / Rp + (z - m) / Rm;
  const double U_S = 2.0 * delta * m / D;
  const double V_rho =
      0.5 * delta * delta * (2.0 * S * S_rho / D - rho / (Rp * Rp) - rho / (Rm * Rm));
  const double V_z =
      0.5 * delta * delta * (2.0 * S * S_z / D - (z + m) / (Rp * Rp) - (z - m) / (Rm * Rm));
  to_polar(r, theta, U_S * S_rho, U_S * S_z, p.U_r, p.U_theta);
  to_polar(r, theta, V_rho, V_z, p.V_r, p.V_theta);
  return p;
}

}  // namespace

BackgroundMetric::BackgroundMetric(Variant v) : v_(v) {
  std::visit(overloaded{[](const Euclidean&) {},
                        [](const Schwarzschild& s) {
                          if (!(s.M > 0)) throw std::invalid_argument("Schwarzschild: M must be > 0");
                        },
                        [](const ZipoyVoorhees& s) {
                          if (!(s.M > 0) || !(s.delta > 0))
                            throw std::invalid_argument("Zipoy-Voorhees: M, delta must be > 0");
                        },
                        [](const CurzonChazy& s) {
                          if (!(s.M > 0)) throw std::invalid_argument("Curzon-Chazy: M must be > 0");
                        }},
             v_);
}

BackgroundMetric BackgroundMetric::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("empty background descriptor");
  const std::string& kind = parts[0];
  auto arg = [&](size_t i) {
    if (i >= parts.size()) throw std::invalid_argument("background '" + text + "': missing parameter");
    return parse_number(parts[i], text);
  };
  if (kind == "euclidean" && parts.size() == 1) return euclidean();
  if (kind == "schwarzschild" && parts.size() == 2) return schwarzschild(arg(1));
  if (kind == "zv" && parts.size() == 3) return zipoy_voorhees(arg(1), arg(2));
  if (kind == "cc" && parts.size() == 2) return curzon_chazy(arg(1));
  throw std::invalid_argument("unknown background descriptor '" + text +
                              "' (expected euclidean | schwarzschild:M | zv:M:delta | cc:M)");
}

std::string BackgroundMetric::to_string() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{[&](const Euclidean&) { os << "euclidean"; },
                        [&](const Schwarzschild& s) { os << "schwarzschild:" << s.M; },
                        [&](const ZipoyVoorhees& s) { os << "zv:" << s.M << ':' << s.delta; },
                        [&](const CurzonChazy& s) { os << "cc:" << s.M; }},
             v_);
  return os.str();
}

double BackgroundMetric::mass() const {
  return std::visit(overloaded{[](const Euclidean&) { return 0.0; },
                               [](const Schwarzschild& s) { return s.M; },
                               [](const ZipoyVoorhees& s) { return s.M; },
                               [](const CurzonChazy& s) { return s.M; }},
                    v_);
}

FieldPoint BackgroundMetric::evaluate(double r, double theta) const {
  return std::visit(
      overloaded{[](const Euclidean&) { return FieldPoint{}; },
                 [&](const Schwarzschild& s) { return weyl_rod(s.M, 1.0, r, theta); },
                 [&](const ZipoyVoorhees& s) { return weyl_rod(s.M, s.delta, r, theta); },
                 [&](const CurzonChazy& s) {
                   if (!(r > kGuard)) throw DomainError("Curzon-Chazy: r must be positive");
                   const double sn = std::sin(theta), cs = std::cos(theta);
                   FieldPoint p;
                   p.U = -s.M / r;
                   p.U_r = s.M / (r * r);
                   p.V = -s.M * s.M * sn * sn / (2.0 * r * r);
                   p.V_r = s.M * s.M * sn * sn / (r * r * r);
                   p.V_theta = -s.M * s.M * sn * cs / (r * r);
                   return p;
                 }},
      v_);
}

FieldSample sample_field(const StaticField& field, const CurveState& curve) {
  const int m = curve.size();
  const Vec th = curve.theta();
  FieldSample s = FieldSample::zeros(m);
  for (int j = 0; j < m; ++j) s.set(j, field.evaluate(curve.r(j), th(j)));
  // axis regularity
  s.U_theta(0) = s.V_theta(0) = 0.0;
  s.U_theta(m - 1) = s.V_theta(m - 1) = 0.0;
  return s;
}

PolarPoint schwarzschild_to_wp(double M, double r_s, double theta_s) {
  if (M == 0.0) return {r_s, theta_s};
  if (!(r_s > 2.0 * M)) throw DomainError("schwarzschild_to_wp: r_S must exceed 2M");
  const double x = r_s / M - 1.0;
  const double rho = M * std::sqrt((x - 1.0) * (x + 1.0)) * std::sin(theta_s);
  const double z = M * x * std::cos(theta_s);
  return {std::hypot(rho, z), std::atan2(rho, z)};
}

PolarPoint wp_to_schwarzschild(double M, double r, double theta) {
  if (M == 0.0) return {r, theta};
  const double rho = r * std::sin(theta), z = r * std::cos(theta);
  const double dz = std::max(0.0, std::abs(z) - M);
  if (std::hypot(rho, dz) < kGuard)
    throw DomainError("wp_to_schwarzschild: point lies on the horizon segment");
  const double S = std::hypot(rho, z + M) + std::hypot(rho, z - M);
  const double x = S / (2.0 * M);
  const double root = std::sqrt((S - 2.0 * M) * (S + 2.0 * M)) / (2.0 * M);  // sqrt(x^2 - 1)
  return {M * (x + 1.0), std::atan2(rho / (M * root), z / (M * x))};
}

CurveState schwarzschild_circle_curve(std::shared_ptr<const SpectralGrid> grid, double M,
                                      double R) {
  if (!(R > 2.0 * M)) throw DomainError("schwarzschild_circle_curve: R must exceed 2M");
  const int m = grid->size();
  Vec r(m), th(m);
  for (int j = 0; j < m; ++j) {
    const PolarPoint p = schwarzschild_to_wp(M, R, pi * grid->tau()(j) / grid->length());
    r(j) = p.r;
    th(j) = p.theta;
  }
  th(0) = 0.0;
  th(m - 1) = pi;
  return CurveState::from_polar(std::move(grid), r, th);
}

}  // namespace wpflow
