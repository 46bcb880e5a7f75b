#include "wpflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "wpflow/errors.hpp"
#include "wpflow/io.hpp"

namespace wpflow {

using std::numbers::pi;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

// Shortest representation that reads back to the same double.
std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double to_double(const std::string& text, const std::string& what) {
  double x = 0;
  const std::string t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw std::invalid_argument("expected a number for " + what + ", got '" + text + "'");
  return x;
}

int to_int(const std::string& text, const std::string& what) {
  int x = 0;
  const std::string t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw std::invalid_argument("expected an integer for " + what + ", got '" + text + "'");
  return x;
}

bool to_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw std::invalid_argument("expected a boolean for " + what + ", got '" + text + "'");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct Field {
  const char* key;
  std::function<void(RunSpec&, const std::string&)> set;
  std::function<std::string(const RunSpec&)> get;
};

#define WP_DOUBLE(KEY, MEMBER)                                                 \
  Field {                                                                      \
    KEY, [](RunSpec& s, const std::string& v) { s.MEMBER = to_double(v, KEY); }, \
        [](const RunSpec& s) { return fmt(s.MEMBER); }                         \
  }
#define WP_INT(KEY, MEMBER)                                                 \
  Field {                                                                   \
    KEY, [](RunSpec& s, const std::string& v) { s.MEMBER = to_int(v, KEY); }, \
        [](const RunSpec& s) { return std::to_string(s.MEMBER); }           \
  }
#define WP_BOOL(KEY, MEMBER)                                                 \
  Field {                                                                    \
    KEY, [](RunSpec& s, const std::string& v) { s.MEMBER = to_bool(v, KEY); }, \
        [](const RunSpec& s) { return bool_str(s.MEMBER); }                  \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"name", [](RunSpec& s, const std::string& v) { s.name = trim(v); },
       [](const RunSpec& s) { return s.name; }},
      WP_INT("flow.N", N),
      {"flow.mode",
       [](RunSpec& s, const std::string& v) {
         const std::string t = trim(v);
         if (t == "fixed")
           s.flow.mode = FlowMode::Fixed;
         else if (t == "coupled")
           s.flow.mode = FlowMode::Coupled;
         else
           throw std::invalid_argument("flow.mode must be fixed or coupled, got '" + t + "'");
       },
       [](const RunSpec& s) {
         return std::string(s.flow.mode == FlowMode::Fixed ? "fixed" : "coupled");
       }},
      {"flow.background",
       [](RunSpec& s, const std::string& v) { s.flow.background = BackgroundMetric::parse(trim(v)); },
       [](const RunSpec& s) { return s.flow.background.to_string(); }},
      WP_DOUBLE("flow.kappa", flow.kappa),
      WP_DOUBLE("flow.cfl", flow.cfl),
      WP_INT("flow.smoothing_steps", flow.smoothing_steps),
      WP_BOOL("flow.reparametrize", flow.reparametrize),
      WP_DOUBLE("flow.r_switch", flow.solver.r_switch),
      WP_DOUBLE("flow.ls_fraction", flow.solver.ls_fraction),
      WP_BOOL("flow.force_ls", flow.solver.force_ls),
      WP_DOUBLE("flow.min_rcond", flow.solver.min_rcond),
      WP_DOUBLE("flow.ls_residual_warn", flow.solver.ls_residual_warn),
      {"flow.v_method",
       [](RunSpec& s, const std::string& v) {
         const std::string t = trim(v);
         if (t == "line_integral")
           s.flow.v_method = VMethod::LineIntegral;
         else if (t == "double_sum")
           s.flow.v_method = VMethod::DoubleSum;
         else
           throw std::invalid_argument("flow.v_method must be line_integral or double_sum");
       },
       [](const RunSpec& s) {
         return std::string(s.flow.v_method == VMethod::LineIntegral ? "line_integral"
                                                                      : "double_sum");
       }},
      WP_DOUBLE("flow.t_max", flow.t_max),
      WP_DOUBLE("flow.stop_tol", flow.stop_tol),
      WP_DOUBLE("flow.length_tol", flow.length_tol),
      WP_INT("flow.mass_cadence", flow.mass_cadence),
      WP_BOOL("flow.symmetric", flow.symmetric),
      WP_BOOL("flow.allow_weak_coupling", flow.allow_weak_coupling),
      {"flow.snapshot_times",
       [](RunSpec& s, const std::string& v) {
         s.flow.snapshot_times.clear();
         for (const auto& item : split(v, ','))
           if (!item.empty()) s.flow.snapshot_times.push_back(to_double(item, "flow.snapshot_times"));
       },
       [](const RunSpec& s) {
         std::string out;
         for (size_t i = 0; i < s.flow.snapshot_times.size(); ++i)
           out += (i ? "," : "") + fmt(s.flow.snapshot_times[i]);
         return out;
       }},
      {"data.source",
       [](RunSpec& s, const std::string& v) {
         const std::string t = trim(v);
         if (t == "curve")
           s.data.source = DataSource::Curve;
         else if (t == "photon_sphere")
           s.data.source = DataSource::PhotonSphere;
         else if (t == "file")
           s.data.source = DataSource::File;
         else
           throw std::invalid_argument("data.source must be curve, photon_sphere or file");
       },
       [](const RunSpec& s) {
         switch (s.data.source) {
           case DataSource::Curve: return std::string("curve");
           case DataSource::PhotonSphere: return std::string("photon_sphere");
           case DataSource::File: break;
         }
         return std::string("file");
       }},
      {"data.background",
       [](RunSpec& s, const std::string& v) { s.data.background = BackgroundMetric::parse(trim(v)); },
       [](const RunSpec& s) { return s.data.background.to_string(); }},
      {"data.curve",
       [](RunSpec& s, const std::string& v) {
         s.data.curve = CurveSpec::parse(trim(v), s.data.curve.frame_string());
       },
       [](const RunSpec& s) { return s.data.curve.shape_string(); }},
      {"data.frame",
       [](RunSpec& s, const std::string& v) {
         s.data.curve = CurveSpec::parse(s.data.curve.shape_string(), trim(v));
       },
       [](const RunSpec& s) { return s.data.curve.frame_string(); }},
      WP_DOUBLE("data.M", data.M),
      WP_DOUBLE("data.A", data.A),
      WP_DOUBLE("data.tau0", data.tau0),
      WP_DOUBLE("data.sigma", data.sigma),
      WP_BOOL("data.squared", data.squared),
      {"data.file", [](RunSpec& s, const std::string& v) { s.data.file = trim(v); },
       [](const RunSpec& s) { return s.data.file; }},
      {"initial.curve",
       [](RunSpec& s, const std::string& v) {
         s.initial = CurveSpec::parse(trim(v), s.initial.frame_string());
       },
       [](const RunSpec& s) { return s.initial.shape_string(); }},
      {"initial.frame",
       [](RunSpec& s, const std::string& v) {
         s.initial = CurveSpec::parse(s.initial.shape_string(), trim(v));
       },
       [](const RunSpec& s) { return s.initial.frame_string(); }},
      WP_BOOL("target.enabled", use_target),
      {"output.dir", [](RunSpec& s, const std::string& v) { s.output_dir = trim(v); },
       [](const RunSpec& s) { return s.output_dir; }},
  };
  return table;
}

#undef WP_DOUBLE
#undef WP_INT
#undef WP_BOOL

const char* const kRequired[] = {"flow.N", "data.source", "initial.curve"};

}  // namespace

CurveSpec CurveSpec::parse(const std::string& shape, const std::string& frame) {
  CurveSpec c;
  const auto parts = split(shape, ':');
  if (parts.size() == 2 && parts[0] == "circle") {
    c.kind = Kind::Circle;
    c.a = c.b = to_double(parts[1], "circle radius");
  } else if (parts.size() == 3 && parts[0] == "ellipse") {
    c.kind = Kind::Ellipse;
    c.a = to_double(parts[1], "ellipse rho axis");
    c.b = to_double(parts[2], "ellipse z axis");
  } else {
    throw std::invalid_argument("curve must be circle:R or ellipse:rho:z, got '" + shape + "'");
  }
  if (!(c.a > 0 && c.b > 0)) throw std::invalid_argument("curve dimensions must be positive");
  const auto f = split(frame, ':');
  if (f.size() == 1 && f[0] == "wp") {
    c.schwarzschild_M.reset();
  } else if (f.size() == 2 && f[0] == "schwarzschild") {
    c.schwarzschild_M = to_double(f[1], "frame mass");
    if (!(*c.schwarzschild_M >= 0)) throw std::invalid_argument("frame mass must be >= 0");
  } else {
    throw std::invalid_argument("frame must be wp or schwarzschild:M, got '" + frame + "'");
  }
  return c;
}

std::string CurveSpec::shape_string() const {
  return kind == Kind::Circle ? "circle:" + fmt(a) : "ellipse:" + fmt(a) + ":" + fmt(b);
}

std::string CurveSpec::frame_string() const {
  return schwarzschild_M ? "schwarzschild:" + fmt(*schwarzschild_M) : "wp";
}

CurveState CurveSpec::build(std::shared_ptr<const SpectralGrid> grid) const {
  if (!schwarzschild_M)
    return kind == Kind::Circle ? wp_circle(grid, a) : wp_ellipse(grid, a, b);
  const double M = *schwarzschild_M;
  if (kind == Kind::Circle) return schwarzschild_circle_curve(grid, M, a);
  // ellipse in the Schwarzschild (rho_S, z_S) = (r_S sin, r_S cos) chart
  const int m = grid->size();
  Vec r(m), th(m);
  for (int j = 0; j < m; ++j) {
    const double t = pi * grid->tau()(j) / grid->length();
    const double rs = std::hypot(a * std::sin(t), b * std::cos(t));
    const double ths = std::atan2(a * std::sin(t), b * std::cos(t));
    const PolarPoint p = schwarzschild_to_wp(M, rs, ths);
    r(j) = p.r;
    th(j) = p.theta;
  }
  th(0) = 0.0;
  th(m - 1) = pi;
  return CurveState::from_polar(grid, r, th);
}

void RunSpec::set(const std::string& key, const std::string& value, int line) {
  const auto& table = fields();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Field& f) { return key == f.key; });
  const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  if (it == table.end()) throw ConfigError(where + "unknown key '" + key + "'", key, line);
  try {
    it->set(*this, value);
  } catch (const std::exception& e) {
    throw ConfigError(where + key + ": " + e.what(), key, line);
  }
}

RunSpec RunSpec::parse(const std::string& text) {
  RunSpec spec;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value", "", line);
    const std::string key = trim(s.substr(0, eq));
    if (seen.count(key))
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key +
                            "' (first set on line " + std::to_string(seen[key]) + ")",
                        key, line);
    seen[key] = line;
    spec.set(key, s.substr(eq + 1), line);
  }
  for (const char* key : kRequired)
    if (!seen.count(key)) throw ConfigError(std::string("missing required key '") + key + "'", key);
  spec.validate();
  return spec;
}

RunSpec RunSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", "");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunSpec::to_text() const {
  std::string out;
  for (const auto& f : fields()) out += std::string(f.key) + " = " + f.get(*this) + "\n";
  return out;
}

void RunSpec::validate() const {
  if (N < 8) throw ConfigError("flow.N must be at least 8", "flow.N");
  try {
    flow.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what(), "flow");
  }
  if (data.source == DataSource::PhotonSphere) {
    if (!(data.M > 0)) throw ConfigError("data.M must be positive", "data.M");
    if (!(data.A >= 0)) throw ConfigError("data.A must be >= 0", "data.A");
    if (!(data.sigma > 0)) throw ConfigError("data.sigma must be positive", "data.sigma");
  }
  if (data.source == DataSource::File && data.file.empty())
    throw ConfigError("data.file is required when data.source = file", "data.file");
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty", "output.dir");
}

CurveState arclength_curve(const CurveState& curve, const BackgroundMetric& bg, double c_tol,
                           int max_steps) {
  CurveGeometry geo = geometry(curve, sample_field(bg, curve));
  // rescale tau to the curve's own length so the smoothing time step is natural
  auto g = std::make_shared<const SpectralGrid>(curve.grid->n(), geo.L);
  CurveState cur(g, curve.r, curve.theta_hat);
  if (geo.C.cwiseAbs().maxCoeff() < c_tol) return cur;
  cur = reparametrize_by_arclength(cur, bg);
  const double dt = 0.1 * g->spacing() * g->spacing();
  const int chunk = 500;
  double c = std::numeric_limits<double>::infinity();
  for (int done = 0; done < max_steps; done += chunk) {
    geo = geometry(cur, sample_field(bg, cur));
    const double prev = c;
    c = geo.C.cwiseAbs().maxCoeff();
    // stop at c_tol, or at the resolution floor where the dealiased flow stalls
    if (c < c_tol || !(c < 0.99 * prev)) break;
    cur = smooth_to_arclength(cur, bg, chunk, dt);
  }
  geo = geometry(cur, sample_field(bg, cur));
  return CurveState(std::make_shared<const SpectralGrid>(g->n(), geo.L), cur.r, cur.theta_hat);
}

BartnikData induced_data(const CurveSpec& shape, const BackgroundMetric& bg, int n,
                         CurveState* target) {
  const int factor = std::max(1, (120 + n - 1) / n);
  const auto guess = std::make_shared<const SpectralGrid>(factor * n, pi);
  const CurveState fine = arclength_curve(shape.build(guess), bg);
  CurveState fine_target;
  const BartnikData fd = make_bartnik_from_curve(bg, fine, &fine_target, 1e-6);
  BartnikData d;
  d.grid = std::make_shared<const SpectralGrid>(n, fd.L_bar());
  d.lambda_bar.resize(n + 1);
  d.H_bar.resize(n + 1);
  Vec r(n + 1), th(n + 1);
  for (int j = 0; j <= n; ++j) {
    d.lambda_bar(j) = fd.lambda_bar(factor * j);
    d.H_bar(j) = fd.H_bar(factor * j);
    r(j) = fine_target.r(factor * j);
    th(j) = fine_target.theta_hat(factor * j);
  }
  if (target) *target = CurveState(d.grid, r, th);
  return d;
}

Problem build_problem(const RunSpec& spec) {
  spec.validate();
  Problem p;
  switch (spec.data.source) {
    case DataSource::Curve: {
      CurveState target;
      p.data = induced_data(spec.data.curve, spec.data.background, spec.N, &target);
      if (spec.use_target) p.target = target;
      break;
    }
    case DataSource::PhotonSphere: {
      const double M = spec.data.M;
      CurveSpec sphere;
      sphere.a = sphere.b = 3 * M;
      sphere.schwarzschild_M = M;
      CurveState target;
      const BartnikData base =
          induced_data(sphere, BackgroundMetric::schwarzschild(M), spec.N, &target);
      const double L = base.L_bar();
      p.data = perturb_bartnik(base, spec.data.A, spec.data.tau0 * L, spec.data.sigma * L,
                               spec.data.squared);
      // the unperturbed sphere is only a target when nothing was perturbed
      if (spec.use_target && spec.data.A == 0.0) p.target = target;
      break;
    }
    case DataSource::File: {
      try {
        p.data = read_bartnik(spec.data.file);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("data.file: ") + e.what(), "data.file");
      }
      if (p.data.n() != spec.N)
        throw ConfigError("flow.N = " + std::to_string(spec.N) + " does not match N = " +
                              std::to_string(p.data.n()) + " in " + spec.data.file,
                          "flow.N");
      break;
    }
  }
  p.data.validate();
  p.initial = spec.initial.build(p.data.grid);
  return p;
}

int exit_code(FlowStatus status) {
  switch (status) {
    case FlowStatus::Converged: return 0;
    case FlowStatus::BlowUp: return 3;
    case FlowStatus::TMaxReached: return 4;
    case FlowStatus::SpuriousStationary: return 5;
  }
  return 1;
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7",
          "fig8", "fig10", "fig11", "fig12", "fig13", "fig14"};
}

RunSpec preset(const std::string& name) {
  static const std::map<std::string, std::string> table = {
      {"fig1", R"(flow.N = 75
flow.mode = fixed
flow.background = euclidean
data.source = curve
data.background = euclidean
data.curve = ellipse:2.5:2
initial.curve = circle:4
flow.t_max = 200
flow.snapshot_times = 0,35.8)"},
      {"fig2", R"(flow.N = 75
flow.mode = fixed
flow.background = euclidean
data.source = curve
data.background = euclidean
data.curve = circle:2
initial.curve = ellipse:4.5:4
flow.t_max = 200)"},
      {"fig3", R"(flow.N = 75
flow.mode = fixed
flow.background = schwarzschild:1
data.source = curve
data.background = schwarzschild:1
data.frame = schwarzschild:1
data.curve = circle:3
initial.frame = schwarzschild:1
initial.curve = circle:4
flow.t_max = 200)"},
      {"fig4", R"(flow.N = 75
flow.mode = fixed
flow.background = schwarzschild:1
data.source = curve
data.background = schwarzschild:1
data.frame = schwarzschild:1
data.curve = circle:3
initial.frame = schwarzschild:1
initial.curve = ellipse:4.5:4
flow.t_max = 200
flow.snapshot_times = 0,6.3,63.2)"},
      {"fig5", R"(flow.N = 75
flow.mode = fixed
flow.background = schwarzschild:1
flow.kappa = 4000
flow.cfl = 0.01
data.source = curve
data.background = schwarzschild:1
data.frame = schwarzschild:1
data.curve = circle:2.16
initial.frame = schwarzschild:1
initial.curve = circle:3
flow.t_max = 20
flow.snapshot_times = 0,0.0041,7.4)"},
      {"fig6", R"(flow.N = 30
flow.mode = coupled
flow.background = euclidean
data.source = curve
data.background = euclidean
data.curve = ellipse:1:2
initial.curve = circle:1.5
flow.t_max = 300
flow.snapshot_times = 0,0.26,52.1)"},
      {"fig7", R"(flow.N = 30
flow.mode = coupled
flow.background = euclidean
data.source = curve
data.background = schwarzschild:1
data.frame = schwarzschild:1
data.curve = circle:3
initial.curve = circle:4
flow.t_max = 400
flow.snapshot_times = 0,4.9,197.4)"},
      {"fig8", R"(flow.N = 30
flow.mode = coupled
flow.background = schwarzschild:1
data.source = curve
data.background = schwarzschild:2
data.frame = schwarzschild:2
data.curve = circle:6
initial.frame = schwarzschild:1
initial.curve = circle:6
flow.t_max = 600)"},
      {"fig10", R"(flow.N = 30
flow.mode = coupled
flow.background = schwarzschild:1
data.source = curve
data.background = schwarzschild:1
data.frame = schwarzschild:1
data.curve = circle:2.41
flow.ls_fraction = 0.5
initial.frame = schwarzschild:1
initial.curve = circle:3
flow.t_max = 400)"},
      {"fig11", R"(flow.N = 30
flow.mode = coupled
flow.background = zv:1:0.7
data.source = curve
data.background = zv:1:0.6
data.curve = circle:3
initial.curve = circle:4
flow.t_max = 400)"},
      {"fig12", R"(flow.N = 30
flow.mode = coupled
flow.background = cc:1
data.source = curve
data.background = cc:2
data.curve = circle:3
initial.curve = circle:4
flow.t_max = 800)"},
      {"fig13", R"(flow.N = 30
flow.mode = coupled
flow.background = schwarzschild:1
data.source = photon_sphere
data.squared = true
data.M = 1
data.A = 0.1
data.tau0 = 0.5
data.sigma = 0.125
initial.frame = schwarzschild:1
initial.curve = circle:4
flow.t_max = 400
flow.snapshot_times = 0,4.9,197.4)"},
      {"fig14", R"(flow.N = 30
flow.mode = coupled
flow.background = schwarzschild:1
data.source = photon_sphere
data.squared = true
data.M = 1
data.A = 0.1
data.tau0 = 0.5
data.sigma = 0.125
initial.frame = schwarzschild:1
initial.curve = circle:4
flow.t_max = 400)"},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")", "preset");
  }
  RunSpec spec = RunSpec::parse(it->second);
  spec.name = name;
  spec.output_dir = "out/" + name;
  return spec;
}

}  // namespace wpflow
