#include "sharedzero/run.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "sharedzero/counterexamples.hpp"
#include "sharedzero/quotient_analysis.hpp"
#include "sharedzero/sector_poisson.hpp"
#include "sharedzero/suite.hpp"

namespace sharedzero {

namespace {

constexpr double kPi = std::numbers::pi;

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol > 0 ? cfg.tol : fallback; }

double step_or(const RunConfig& cfg, double fallback) { return cfg.step > 0 ? cfg.step : fallback; }

GridSpec disk_grid(const RunConfig& cfg) {
  return GridSpec::disk(cfg.grid_radius, cfg.grid_n, cfg.grid_n, cfg.band);
}

QuotientField build_pair(const RunConfig& cfg) {
  return QuotientField(build_field(cfg.u, cfg), build_field(cfg.v, cfg));
}

void require_normal_form_v(const RunConfig& cfg) {
  if (cfg.v.family != "normal_form" || cfg.v.k != cfg.k)
    throw ConfigError("this command needs v = normal_form with v.k = k");
}

std::vector<double> sector_samples(const RunConfig& cfg, int k) {
  if (!cfg.data.empty()) return read_samples(cfg.data);
  return default_sector_samples(k);
}

}  // namespace

std::vector<double> default_sector_samples(int k, int n) {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double phi = (kPi / k) * j / (n - 1);
    out[j] = std::max(0.0, std::sin(k * phi) * (1 + 0.5 * std::cos(k * phi)));
  }
  return out;
}

HarmonicField build_field(const FieldParams& params, const RunConfig& cfg) {
  FieldParams p = params;
  if (p.samples.empty()) {
    if (p.family == "sector_reflected") {
      p.samples = sector_samples(cfg, p.k);
    } else if (p.family == "poisson_disk") {
      if (!cfg.data.empty()) {
        p.samples = read_samples(cfg.data);
      } else {
        for (int j = 0; j < 64; ++j) p.samples.push_back(1 + 0.5 * std::cos(2 * kPi * j / 64));
      }
    }
  }
  return example_field(p);
}

std::vector<VerificationReport> run_reports(const RunConfig& cfg, std::ostream& log) {
  std::vector<VerificationReport> out;
  switch (cfg.command) {
    case Command::verify_pde: {
      out.push_back(pde_residual_sweep(build_pair(cfg), disk_grid(cfg), tol_or(cfg, 1e-9)));
      break;
    }
    case Command::verify_deltaF: {
      // Below ~1e-3 the fourth difference of F is roundoff-limited.
      const double step = step_or(cfg, 1e-3);
      out.push_back(deltaF_sweep(build_pair(cfg), disk_grid(cfg), step, tol_or(cfg, bochner_tolerance(step))));
      break;
    }
    case Command::verify_qform: {
      out.push_back(qform_sweep(cfg.k, cfg.count, cfg.seed, 0.1, 1.9, tol_or(cfg, 1e-10)));
      break;
    }
    case Command::verify_bochner: {
      require_normal_form_v(cfg);
      out.push_back(bochner_sweep(cfg.k, build_pair(cfg), disk_grid(cfg), step_or(cfg, 1e-4)));
      break;
    }
    case Command::certify_bound: {
      require_normal_form_v(cfg);
      const CutoffSpec cutoff = cutoff_build();
      // phi vanishes for r^2 >= 2, so the sup lives inside r < sqrt(2).
      const GridSpec grid = GridSpec::disk(1.42, cfg.grid_n, cfg.grid_n, cfg.band);
      out.push_back(gradient_bound_certificate(cfg.k, build_pair(cfg), cutoff, grid));
      break;
    }
    case Command::sector_poisson: {
      const SectorBoundaryData data(cfg.k, sector_samples(cfg, cfg.k));
      const KernelBounds kb = kernel_bounds(cfg.k);
      const GridSpec grid = GridSpec::sector(kPi / cfg.k, 0.5, cfg.grid_n, cfg.grid_n);
      out.push_back(sector_log_gradient_check(data, grid, kb));
      break;
    }
    case Command::counterexample: {
      const auto radii = geometric_radii(1e-5, 1e-2, 12);
      const KenigPair pair = kenig_pair(cfg.t, cfg.eps);
      out.push_back(kenig_regularity(pair, radii));
      out.push_back(green_quotient_regularity(cfg.t, default_green_pole(cfg.t), radii));
      for (const auto& r : out) {
        const bool expected = (r.note == "blow-up") == (cfg.t < 2);
        log << r.check << " t=" << format_real(cfg.t) << ": " << r.note
            << (expected ? " confirmed" : " NOT confirmed") << ", slope "
            << format_real(r.extra("slope")) << '\n';
      }
      break;
    }
    case Command::suite: {
      SuiteOptions opt;
      opt.step = step_or(cfg, opt.step);
      opt.seed = cfg.seed;
      for (auto& c : run_suite(opt, &log))
        for (auto& r : c.reports) out.push_back(std::move(r));
      break;
    }
  }
  return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  try {
    validate(cfg);
    const auto reports = run_reports(cfg, log);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed();
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw ConfigError("cannot write output file '" + cfg.output + "'");
      sink = &file;
    }
    if (cfg.format == OutputFormat::json) {
      write_json(*sink, reports, cfg.timing);
    } else {
      write_csv(*sink, reports);
    }
    for (const auto& r : reports)
      log << (r.passed() ? "PASS " : "FAIL ") << r.check << " k_or_t=" << format_real(r.k_or_t)
          << " extremal=" << format_real(r.extremal) << " bound=" << format_real(r.bound) << '\n';
    return ok ? kExitPass : kExitFail;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    log << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalBreakdown& e) {
    log << "numerical breakdown: " << e.what() << " at (" << format_real(e.x()) << ", "
        << format_real(e.y()) << ")\n";
    return kExitBreakdown;
  }
}

}  // namespace sharedzero
