#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace elastica {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;  // threshold the measured value is compared against
  std::string details;
};

struct VerifyOptions {
  int N = 64;
  bool mutate_f3 = false;   // flip the sign of the cubic forcing term
  int ensemble_size = 200;  // random curves for the spectral/identity sweeps
  int roundtrip_count = 50; // random pairs for the transform round trip
  int only = 0;             // 0 = all checks, else a single criterion number 1..11
};

// Matrix exponential of a 2x2 complex matrix by scaling and squaring with an
// extended-precision Taylor core; reference oracle for the closed-form
// propagator.
Eigen::Matrix2cd expm_2x2(const Eigen::Matrix2cd& A);

// Run the structural verification suite (or a single numbered criterion) and
// return one result per check.
std::vector<CheckResult> verify_all(const VerifyOptions& opts = {});

// Run the suite, print one [PASS]/[FAIL] line per check, write
// verify_report.json into out_dir, and return the number of failures.
int verify_and_report(const VerifyOptions& opts, const std::string& out_dir);

}  // namespace elastica
