#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpflow/flow.hpp"

namespace wpflow {

// Unparseable or incomplete run configuration. `line` is 0 when the problem
// is not tied to a particular input line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field, int line = 0)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

// "circle:R" or "ellipse:rho:z", interpreted in a frame: "wp" (Weyl-Papapetrou
// coordinates) or "schwarzschild:M" (Schwarzschild coordinates of mass M).
struct CurveSpec {
  enum class Kind { Circle, Ellipse } kind = Kind::Circle;
  double a = 1.0;  // radius, or rho semi-axis
  double b = 1.0;  // z semi-axis (ellipse)
  std::optional<double> schwarzschild_M;

  static CurveSpec parse(const std::string& shape, const std::string& frame);
  std::string shape_string() const;
  std::string frame_string() const;
  // The curve sampled uniformly in its natural angle on `grid`.
  CurveState build(std::shared_ptr<const SpectralGrid> grid) const;
};

enum class DataSource { Curve, PhotonSphere, File };

struct DataSpec {
  DataSource source = DataSource::Curve;
  // source = curve
  BackgroundMetric background = BackgroundMetric::euclidean();
  CurveSpec curve;
  // source = photon_sphere
  double M = 1.0;
  double A = 0.0;
  double tau0 = 0.5;   // fraction of L_bar
  double sigma = 0.125;  // fraction of L_bar
  bool squared = false;
  // source = file
  std::string file;
};

struct RunSpec {
  std::string name = "run";
  int N = 0;
  FlowConfig flow;
  DataSpec data;
  CurveSpec initial;
  bool use_target = true;  // d(t) against the data curve when it is known
  std::string output_dir = "out";

  // Flat "key = value" text; '#' starts a comment. Throws ConfigError with
  // the offending line and key.
  static RunSpec parse(const std::string& text);
  static RunSpec load(const std::string& path);
  // Every field, resolved; parse(to_text()) reproduces the spec.
  std::string to_text() const;
  // Applies one key=value pair (used by parse and by command-line overrides).
  void set(const std::string& key, const std::string& value, int line = 0);
  void validate() const;
};

std::vector<std::string> preset_names();
// Throws ConfigError for an unknown name.
RunSpec preset(const std::string& name);

// Bartnik data, initial curve and optional target built from a spec.
struct Problem {
  BartnikData data;
  CurveState initial;
  std::optional<CurveState> target;
};

// Reparametrizes and smooths until max|C| < c_tol or the decrease stalls at
// the resolution floor, on a grid whose length is the curve's own length.
CurveState arclength_curve(const CurveState& curve, const BackgroundMetric& bg, double c_tol = 1e-9,
                           int max_steps = 200000);

// Data induced by `bg` on the curve `shape`. The curve is made arclength on
// a grid refined by an integer factor (to at least 120 intervals) and the
// data are restricted to the N-grid, whose nodes are a subset. `target`
// receives the curve on the N-grid.
BartnikData induced_data(const CurveSpec& shape, const BackgroundMetric& bg, int n,
                         CurveState* target = nullptr);

Problem build_problem(const RunSpec& spec);

// Maps a trajectory status to the command-line exit code.
int exit_code(FlowStatus status);

}  // namespace wpflow
