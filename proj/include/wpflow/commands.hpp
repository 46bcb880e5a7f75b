#pragma once

#include <string>
#include <vector>

#include "wpflow/config.hpp"
#include "wpflow/flow.hpp"

namespace wpflow {

struct RunOutcome {
  FlowTrajectory trajectory;
  int exit_code = 0;
};

// Builds the problem, runs the flow and writes artifacts to spec.output_dir.
RunOutcome run_and_write(const RunSpec& spec);

// Copy of `base` with one swept parameter replaced: "A", "kappa", "N" or
// "r_target" (radius of a circular data curve).
RunSpec with_parameter(const RunSpec& base, const std::string& param, double value);

struct SweepRow {
  double value = 0;
  std::string status;
  int exit_code = 0;
  long steps = 0;
  double t = 0, L = 0;
  double m_adm = 0, m_hawking = 0, m_pn = 0, area = 0;
  std::string message;
};

// One run per value, `jobs` at a time, each in <out_dir>/<param>_<index>;
// failures are recorded in the row, never thrown. Writes
// <out_dir>/summary.csv. Throws ConfigError for an empty value list or an
// unknown parameter.
std::vector<SweepRow> run_sweep(const RunSpec& base, const std::string& param,
                                const std::vector<double>& values, const std::string& out_dir,
                                int jobs = 1);

}  // namespace wpflow
