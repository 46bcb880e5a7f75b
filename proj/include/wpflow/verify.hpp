#pragma once

#include <string>
#include <vector>

namespace wpflow {

struct VerifyResult {
  std::string name;
  bool pass = false;
  double value = 0;      // measured deviation
  double tolerance = 0;  // pass threshold
  std::string detail;
};

std::vector<std::string> verify_suites();
// Runs one oracle suite: "spectral", "ode", "modes" or "masses".
// Throws std::invalid_argument for an unknown suite.
std::vector<VerifyResult> run_verify(const std::string& suite);

}  // namespace wpflow
