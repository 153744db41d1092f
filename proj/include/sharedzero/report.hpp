#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sharedzero/field_core.hpp"

namespace sharedzero {

enum class Verdict { pass, fail };
/// at_most: the extremal value is a sup that must not exceed the bound.
/// at_least: the extremal value is a min that must not fall below it.
enum class Relation { at_most, at_least };

/// Outcome of one named check over a sweep of sample points. Reports over
/// disjoint sweeps of the same check combine with merge(), which is
/// associative and commutative; ties on the extremal value go to the
/// smallest enumeration index.
struct VerificationReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  double k_or_t{0.0};
  Relation relation{Relation::at_most};
  double bound{0.0};
  long samples{0};
  double extremal{0.0};
  double x_ext{0.0};
  double y_ext{0.0};
  long ext_index{-1};
  Verdict verdict{Verdict::pass};
  double wall_time{0.0};
  std::vector<std::pair<std::string, double>> extras;
  std::string note;

  VerificationReport() = default;
  VerificationReport(std::string name, double k_or_t_value, Relation rel, double bound_value);

  /// Folds one sample into the extremum. Throws NumericalBreakdown on NaN/inf.
  void observe(double value, double x, double y, long index);
  void observe(double value, const PlanePointd& p, long index) {
    observe(value, p.x(), p.y(), index);
  }

  /// Recomputes the verdict from extremal, bound and relation.
  void finalize();

  bool passed() const { return verdict == Verdict::pass; }

  void add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
  }
  void add_param(const std::string& key, double value);
  void add_extra(const std::string& key, double value) { extras.emplace_back(key, value); }
  double extra(const std::string& key) const;
};

VerificationReport merge(const VerificationReport& a, const VerificationReport& b);

/// %.17g formatting used everywhere a real number is written.
std::string format_real(double v);

void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports);
void write_json(std::ostream& os, const std::vector<VerificationReport>& reports,
                bool include_timing);

}  // namespace sharedzero
