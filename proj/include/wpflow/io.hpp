#pragma once

#include <iosfwd>
#include <string>

#include "wpflow/config.hpp"
#include "wpflow/flow.hpp"

namespace wpflow {

// All numbers are written with 17 significant digits.

// Header "# L_bar=<L>" and "# N=<N>", then rows tau,lambda_bar,H_bar.
void write_bartnik(std::ostream& out, const BartnikData& data);
void write_bartnik(const std::string& path, const BartnikData& data);
BartnikData read_bartnik(std::istream& in);
BartnikData read_bartnik(const std::string& path);

// t,L,max_abs_C,m_adm,m_hawking,m_pn,d_target,step,max_speed,area,ls_mode
void write_timeseries(std::ostream& out, const FlowTrajectory& traj);
// tau,r,theta,rho,z,ell,C,H
void write_snapshot(std::ostream& out, const FlowSnapshot& snap);
// n,a_n
void write_coefficients(std::ostream& out, const Vec& a);

// Writes manifest.cfg, timeseries.csv, snapshot_<k>.csv, coefficients_<k>.csv
// (coupled mode), final_curve.csv and status.txt into `dir`.
void write_run_artifacts(const std::string& dir, const RunSpec& spec, const FlowTrajectory& traj);

}  // namespace wpflow
