#include "wpflow/io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wpflow/errors.hpp"

namespace wpflow {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_bartnik(std::ostream& out, const BartnikData& data) {
  const auto old = out.precision(17);
  out << "# L_bar=" << data.L_bar() << "\n# N=" << data.n() << "\ntau,lambda_bar,H_bar\n";
  for (int j = 0; j <= data.n(); ++j)
    out << data.grid->tau()(j) << ',' << data.lambda_bar(j) << ',' << data.H_bar(j) << '\n';
  out.precision(old);
}

void write_bartnik(const std::string& path, const BartnikData& data) {
  auto out = open_out(path);
  write_bartnik(out, data);
}

BartnikData read_bartnik(std::istream& in) {
  double L = 0;
  int n = 0;
  std::string line;
  int lineno = 0;
  std::vector<double> lam, H;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# L_bar=", 0) == 0) {
      L = std::stod(line.substr(8));
    } else if (line.rfind("# N=", 0) == 0) {
      n = std::stoi(line.substr(4));
    } else if (line[0] == '#') {
      continue;
    } else if (!header_seen) {
      if (line != "tau,lambda_bar,H_bar")
        throw std::runtime_error("bartnik data line " + std::to_string(lineno) +
                                 ": expected column header tau,lambda_bar,H_bar");
      header_seen = true;
    } else {
      std::istringstream row(line);
      double t, l, h;
      char c1, c2;
      if (!(row >> t >> c1 >> l >> c2 >> h) || c1 != ',' || c2 != ',')
        throw std::runtime_error("bartnik data line " + std::to_string(lineno) + ": malformed row");
      lam.push_back(l);
      H.push_back(h);
    }
  }
  if (!(L > 0) || n < 8) throw std::runtime_error("bartnik data: missing or invalid L_bar/N header");
  if (static_cast<int>(lam.size()) != n + 1)
    throw std::runtime_error("bartnik data: expected " + std::to_string(n + 1) + " rows, got " +
                             std::to_string(lam.size()));
  BartnikData d;
  d.grid = std::make_shared<const SpectralGrid>(n, L);
  d.lambda_bar = Eigen::Map<const Vec>(lam.data(), n + 1);
  d.H_bar = Eigen::Map<const Vec>(H.data(), n + 1);
  d.validate();
  return d;
}

BartnikData read_bartnik(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return read_bartnik(in);
}

void write_timeseries(std::ostream& out, const FlowTrajectory& traj) {
  const auto old = out.precision(17);
  out << "t,L,max_abs_C,m_adm,m_hawking,m_pn,d_target,step,max_speed,area,ls_mode\n";
  for (const FlowSample& s : traj.samples) {
    out << s.t << ',' << s.L << ',' << s.max_abs_C << ',' << s.masses.m_adm << ','
        << s.masses.m_hawking << ',' << s.masses.m_pn << ',';
    if (s.d_target) out << *s.d_target;
    out << ',' << s.step << ',' << s.max_speed << ',' << s.masses.area << ',' << (s.ls_mode ? 1 : 0)
        << '\n';
  }
  out.precision(old);
}

void write_snapshot(std::ostream& out, const FlowSnapshot& snap) {
  const auto old = out.precision(17);
  const CurveState& c = snap.curve;
  const Vec rho = c.rho(), z = c.z(), th = c.theta();
  out << "# t=" << snap.t << "\ntau,r,theta,rho,z,ell,C,H\n";
  for (int j = 0; j < c.size(); ++j)
    out << c.grid->tau()(j) << ',' << c.r(j) << ',' << th(j) << ',' << rho(j) << ',' << z(j) << ','
        << snap.geo.ell(j) << ',' << snap.geo.C(j) << ',' << snap.geo.H(j) << '\n';
  out.precision(old);
}

void write_coefficients(std::ostream& out, const Vec& a) {
  const auto old = out.precision(17);
  out << "n,a_n\n";
  for (int k = 0; k < a.size(); ++k) out << k << ',' << a(k) << '\n';
  out.precision(old);
}

void write_run_artifacts(const std::string& dir, const RunSpec& spec, const FlowTrajectory& traj) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);
  {
    auto out = open_out((base / "manifest.cfg").string());
    out << "# resolved configuration; reproduces this run\n" << spec.to_text();
  }
  {
    auto out = open_out((base / "timeseries.csv").string());
    write_timeseries(out, traj);
  }
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    auto out = open_out((base / ("snapshot_" + std::to_string(k) + ".csv")).string());
    write_snapshot(out, traj.snapshots[k]);
    if (traj.snapshots[k].coefficients.size() > 0) {
      auto co = open_out((base / ("coefficients_" + std::to_string(k) + ".csv")).string());
      write_coefficients(co, traj.snapshots[k].coefficients);
    }
  }
  if (traj.final_field) {
    auto co = open_out((base / "coefficients_final.csv").string());
    write_coefficients(co, traj.final_field->a());
  }
  {
    auto out = open_out((base / "final_curve.csv").string());
    out << "tau,r,theta,rho,z\n";
    const CurveState& c = traj.final_curve;
    if (c.grid) {
      const Vec rho = c.rho(), z = c.z(), th = c.theta();
      for (int j = 0; j < c.size(); ++j)
        out << c.grid->tau()(j) << ',' << c.r(j) << ',' << th(j) << ',' << rho(j) << ',' << z(j)
            << '\n';
    }
  }
  {
    auto out = open_out((base / "status.txt").string());
    const FlowSample& f = traj.final_sample;
    out << "status=" << to_string(traj.status) << "\nmessage=" << traj.message
        << "\nsteps=" << traj.steps << "\nt=" << f.t << "\nL=" << f.L << "\nm_adm=" << f.masses.m_adm
        << "\nm_hawking=" << f.masses.m_hawking << "\nm_pn=" << f.masses.m_pn
        << "\nls_switch_time=" << traj.ls_switch_time << '\n';
    for (const auto& l : traj.log) out << "log=" << l << '\n';
  }
}

}  // namespace wpflow
