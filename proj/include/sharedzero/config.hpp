#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharedzero/harmonic_library.hpp"

namespace sharedzero {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command {
  verify_pde,
  verify_deltaF,
  verify_qform,
  verify_bochner,
  certify_bound,
  sector_poisson,
  counterexample,
  suite,
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

enum class OutputFormat { json, csv };

inline FieldParams field_named(const std::string& family) {
  FieldParams p;
  p.family = family;
  return p;
}

/// Everything a run needs. Zero step or tolerance means "use the check's default".
struct RunConfig {
  Command command{Command::suite};
  FieldParams u{field_named("weiss")};
  FieldParams v{field_named("normal_form")};
  int k{1};
  double t{1.5};
  double eps{0.1};
  double grid_radius{1.5};
  int grid_n{200};
  double band{0.0};
  double step{0.0};
  double tol{0.0};
  long count{10000};
  std::uint64_t seed{20240601};
  std::string data;  // one-number-per-line boundary samples
  std::string output;
  OutputFormat format{OutputFormat::json};
  bool timing{false};
};

/// Applies one key=value setting. Keys mirror the RunConfig fields; field
/// parameters use the prefixes "u." and "v." (e.g. u.alpha=0.5), and the bare
/// keys family/alpha/epsilon/coeffs address u. Setting k also sets u.k and v.k.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment. Later lines win.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Checks ranges (tolerances > 0 when set, grid sizes, step).
void validate(const RunConfig& cfg);

/// One sample per line; blank lines and '#' comments skipped.
std::vector<double> read_samples(const std::string& path);

}  // namespace sharedzero
