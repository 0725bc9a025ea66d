#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plab {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  double D = 4.0;
  double epsilon = 0.1;
  double eta = 0.25;
  int m = 4;
  int quad_order = 0;     // 0: auto
  double grid_rate = 64.0;
  std::uint64_t seed = 1;
  int lemma_samples = 2000;
  std::string inject_fault;  // "", or "cjk" to corrupt one normalization constant
};

/// Named assertion battery across the modules. Deterministic for fixed
/// options. Every check carries the measured value and the bound it is
/// compared against.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace plab
