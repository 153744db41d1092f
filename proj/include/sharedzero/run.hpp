#pragma once

#include <iosfwd>
#include <vector>

#include "sharedzero/config.hpp"
#include "sharedzero/report.hpp"

namespace sharedzero {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitConfig = 2,
  kExitBreakdown = 3,
};

/// Positive profile sin(k phi)(1 + cos(k phi)/2) at n samples on [0, pi/k].
std::vector<double> default_sector_samples(int k, int n = 65);

/// Builds u or v from the config, filling in boundary samples from the data
/// file or the default profile when the family needs them.
HarmonicField build_field(const FieldParams& params, const RunConfig& cfg);

/// Reports produced by one command (the suite returns one per check).
std::vector<VerificationReport> run_reports(const RunConfig& cfg, std::ostream& log);

/// Runs the command, writes the report file (or stdout) and returns the exit
/// code: 0 all pass, 1 some verdict failed, 2 config error, 3 numerical
/// breakdown.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace sharedzero
