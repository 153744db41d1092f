#include "sharedzero/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sharedzero {

VerificationReport::VerificationReport(std::string name, double k_or_t_value, Relation rel,
                                       double bound_value)
    : check(std::move(name)), k_or_t(k_or_t_value), relation(rel), bound(bound_value) {
  extremal = rel == Relation::at_most ? -std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::infinity();
}

void VerificationReport::observe(double value, double x, double y, long index) {
  if (!std::isfinite(value))
    throw NumericalBreakdown(check + ": non-finite value at (" + format_real(x) + ", " +
                                 format_real(y) + ")",
                             x, y);
  ++samples;
  const bool better = relation == Relation::at_most ? value > extremal : value < extremal;
  const bool tie = value == extremal && (ext_index < 0 || index < ext_index);
  if (better || tie) {
    extremal = value;
    x_ext = x;
    y_ext = y;
    ext_index = index;
  }
}

void VerificationReport::finalize() {
  const bool ok = relation == Relation::at_most ? extremal <= bound : extremal >= bound;
  verdict = ok ? Verdict::pass : Verdict::fail;
}

void VerificationReport::add_param(const std::string& key, double value) {
  params.emplace_back(key, format_real(value));
}

double VerificationReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras)
    if (k == key) return v;
  throw std::out_of_range("report has no extra '" + key + "'");
}

VerificationReport merge(const VerificationReport& a, const VerificationReport& b) {
  if (a.check != b.check || a.relation != b.relation)
    throw std::invalid_argument("merge: reports describe different checks");
  VerificationReport out = a;
  out.bound = a.relation == Relation::at_most ? std::min(a.bound, b.bound)
                                              : std::max(a.bound, b.bound);
  out.samples = a.samples + b.samples;
  out.wall_time = a.wall_time + b.wall_time;
  const bool take_b = a.relation == Relation::at_most ? b.extremal > a.extremal
                                                      : b.extremal < a.extremal;
  const bool tie = b.extremal == a.extremal && b.ext_index >= 0 &&
                   (a.ext_index < 0 || b.ext_index < a.ext_index);
  if (take_b || tie) {
    out.extremal = b.extremal;
    out.x_ext = b.x_ext;
    out.y_ext = b.y_ext;
    out.ext_index = b.ext_index;
  }
  out.finalize();
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_real(double v) {
  if (!std::isfinite(v)) return "null";
  return format_real(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

const char* verdict_name(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

}  // namespace

void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  os << "check,k_or_t,sup_or_min,bound,verdict,x_ext,y_ext\n";
  for (const auto& r : reports) {
    os << csv_field(r.check) << ',' << format_real(r.k_or_t) << ',' << format_real(r.extremal)
       << ',' << format_real(r.bound) << ',' << verdict_name(r.verdict) << ','
       << format_real(r.x_ext) << ',' << format_real(r.y_ext) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<VerificationReport>& reports,
                bool include_timing) {
  os << "[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << "  {\n    \"check\": " << json_string(r.check) << ",\n    \"params\": {";
    for (size_t j = 0; j < r.params.size(); ++j)
      os << (j ? ", " : "") << json_string(r.params[j].first) << ": "
         << json_string(r.params[j].second);
    os << "},\n    \"k_or_t\": " << json_real(r.k_or_t)
       << ",\n    \"relation\": " << (r.relation == Relation::at_most ? "\"<=\"" : "\">=\"")
       << ",\n    \"samples\": " << r.samples << ",\n    \"extremal\": " << json_real(r.extremal)
       << ",\n    \"bound\": " << json_real(r.bound) << ",\n    \"verdict\": \""
       << verdict_name(r.verdict) << "\",\n    \"extremal_point\": [" << json_real(r.x_ext)
       << ", " << json_real(r.y_ext) << "]";
    if (!r.extras.empty()) {
      os << ",\n    \"extras\": {";
      for (size_t j = 0; j < r.extras.size(); ++j)
        os << (j ? ", " : "") << json_string(r.extras[j].first) << ": "
           << json_real(r.extras[j].second);
      os << "}";
    }
    if (!r.note.empty()) os << ",\n    \"note\": " << json_string(r.note);
    if (include_timing) os << ",\n    \"wall_time\": " << json_real(r.wall_time);
    os << "\n  }" << (i + 1 < reports.size() ? "," : "") << "\n";
  }
  os << "]\n";
}

}  // namespace sharedzero
