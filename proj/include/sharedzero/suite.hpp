#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sharedzero/report.hpp"

namespace sharedzero {

struct SuiteOptions {
  double step{1e-4};              // FD step of the Bochner checks
  std::uint64_t seed{20240601};   // random (p, X) and random boundary data
  int pde_grid_n{200};            // per axis, B_1.5
  int bochner_grid_n{60};
  int certificate_grid_n{120};
};

/// Outcome of one acceptance criterion.
struct CriterionResult {
  int id{0};
  std::string title;
  bool passed{false};
  std::string detail;
  double seconds{0.0};
  std::vector<VerificationReport> reports;
};

CriterionResult criterion_pde_residual(const SuiteOptions& opt);
CriterionResult criterion_qform(const SuiteOptions& opt);
CriterionResult criterion_bochner(const SuiteOptions& opt);
CriterionResult criterion_certificate(const SuiteOptions& opt);
CriterionResult criterion_sector_poisson(const SuiteOptions& opt);
CriterionResult criterion_counterexamples(const SuiteOptions& opt);
CriterionResult criterion_oracle_consistency(const SuiteOptions& opt);

/// Criteria 1-7 in order; progress lines go to `log` when non-null.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt, std::ostream* log);

}  // namespace sharedzero
