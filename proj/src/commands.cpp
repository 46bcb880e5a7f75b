#include "wpflow/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <thread>

#include "wpflow/io.hpp"

namespace wpflow {

RunOutcome run_and_write(const RunSpec& spec) {
  const Problem p = build_problem(spec);
  RunOutcome out;
  out.trajectory = run(spec.flow, p.data, p.initial, p.target);
  out.exit_code = exit_code(out.trajectory.status);
  write_run_artifacts(spec.output_dir, spec, out.trajectory);
  return out;
}

RunSpec with_parameter(const RunSpec& base, const std::string& param, double value) {
  RunSpec s = base;
  if (param == "A") {
    if (s.data.source != DataSource::PhotonSphere)
      throw ConfigError("sweeping A requires data.source = photon_sphere", "data.A");
    s.data.A = value;
  } else if (param == "kappa") {
    s.flow.kappa = value;
  } else if (param == "N") {
    if (value != std::floor(value)) throw ConfigError("N must be an integer", "flow.N");
    s.N = static_cast<int>(value);
  } else if (param == "r_target") {
    if (s.data.source != DataSource::Curve || s.data.curve.kind != CurveSpec::Kind::Circle)
      throw ConfigError("sweeping r_target requires a circular data curve", "data.curve");
    s.data.curve.a = s.data.curve.b = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + param + "' (use A, kappa, N or r_target)",
                      "param");
  }
  s.validate();
  return s;
}

std::vector<SweepRow> run_sweep(const RunSpec& base, const std::string& param,
                                const std::vector<double>& values, const std::string& out_dir,
                                int jobs) {
  if (values.empty()) throw ConfigError("sweep needs at least one value", "values");
  static const std::vector<std::string> known = {"A", "kappa", "N", "r_target"};
  if (std::find(known.begin(), known.end(), param) == known.end())
    throw ConfigError("unknown sweep parameter '" + param + "' (use A, kappa, N or r_target)",
                      "param");

  std::vector<SweepRow> rows(values.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < values.size();) {
      SweepRow& row = rows[i];
      row.value = values[i];
      try {
        RunSpec spec = with_parameter(base, param, values[i]);
        spec.output_dir =
            (std::filesystem::path(out_dir) / (param + "_" + std::to_string(i))).string();
        const RunOutcome o = run_and_write(spec);
        const FlowTrajectory& tr = o.trajectory;
        row.status = to_string(tr.status);
        row.exit_code = o.exit_code;
        row.steps = tr.steps;
        row.t = tr.final_sample.t;
        row.L = tr.final_sample.L;
        row.m_adm = tr.final_sample.masses.m_adm;
        row.m_hawking = tr.final_sample.masses.m_hawking;
        row.m_pn = tr.final_sample.masses.m_pn;
        row.area = tr.final_sample.masses.area;
        row.message = tr.message;
      } catch (const std::exception& e) {
        row.status = "error";
        row.exit_code = 2;
        row.message = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(values.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(std::filesystem::path(out_dir) / "summary.csv");
  csv << std::setprecision(17) << param
      << ",status,exit_code,steps,t,L,m_adm,m_hawking,m_pn,area,message\n";
  for (const SweepRow& r : rows) {
    std::string msg = r.message;
    for (char& c : msg)
      if (c == '"') c = '\'';
    csv << r.value << ',' << r.status << ',' << r.exit_code << ',' << r.steps << ',' << r.t << ','
        << r.L << ',' << r.m_adm << ',' << r.m_hawking << ',' << r.m_pn << ',' << r.area << ",\""
        << msg << "\"\n";
  }
  return rows;
}

}  // namespace wpflow
