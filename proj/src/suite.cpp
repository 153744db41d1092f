#include "sharedzero/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "sharedzero/counterexamples.hpp"
#include "sharedzero/quotient_analysis.hpp"
#include "sharedzero/run.hpp"
#include "sharedzero/sector_poisson.hpp"

namespace sharedzero {

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

HarmonicField sector_field(int k) {
  return sector_reflected(SectorBoundaryData(k, default_sector_samples(k)));
}

PowerSeries monomial(double c, int k) {
  std::vector<Complex> coeffs(k + 1, 0.0);
  coeffs[k] = c;
  return PowerSeries(coeffs);
}

struct NamedPair {
  int k;
  HarmonicField u;
};

// In-library fields sharing the zero set of v_k, k = 1..6.
std::vector<NamedPair> library_pairs() {
  std::vector<NamedPair> out;
  for (double a : {1.0, -0.5, kPi / 2}) out.push_back({1, weiss(a)});
  out.push_back({1, im_exp_of(monomial(1.0, 1))});
  for (double a : {0.5, -1.0, 1.0}) out.push_back({1, shifted_power(a)});
  out.push_back({1, moebius_of(monomial(1.0, 1), 1.0, 0.25, 1.0)});
  for (double e : {0.05, -0.1}) out.push_back({2, fefferman(e)});
  for (int k = 1; k <= 6; ++k) {
    out.push_back({k, normal_form(k)});
    out.push_back({k, sector_field(k)});
    if (k >= 2) {
      const double c = std::pow(0.5, k);
      out.push_back({k, im_exp_of(monomial(c, k))});
      out.push_back({k, moebius_of(monomial(c, k), 1.0, 0.25, 1.0)});
    }
  }
  return out;
}

CriterionResult start(int id, std::string title) {
  CriterionResult c;
  c.id = id;
  c.title = std::move(title);
  c.passed = true;
  return c;
}

void absorb(CriterionResult& c, VerificationReport r) {
  c.passed = c.passed && r.passed();
  c.reports.push_back(std::move(r));
}

}  // namespace

CriterionResult criterion_pde_residual(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  auto c = start(1, "log-quotient PDE residual <= 1e-9 on B_1.5");
  const std::pair<HarmonicField, int> pairs[] = {{weiss(1.0), 1},
                                                 {im_exp_of(monomial(1.0, 1)), 1},
                                                 {fefferman(0.05), 2},
                                                 {shifted_power(0.5), 1}};
  double worst = 0.0, slowest = 0.0;
  for (const auto& [u, k] : pairs) {
    const auto t1 = Clock::now();
    const QuotientField q(u, normal_form(k));
    auto r = pde_residual_sweep(q, GridSpec::disk(1.5, opt.pde_grid_n, opt.pde_grid_n), 1e-9);
    const double dt = seconds_since(t1);
    slowest = std::max(slowest, dt);
    worst = std::max(worst, r.extremal);
    absorb(c, std::move(r));
  }
  if (slowest > 10.0) c.passed = false;
  std::ostringstream os;
  os << "max residual " << format_real(worst) << ", slowest pair " << slowest << " s";
  c.detail = os.str();
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_qform(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  auto c = start(2, "quadratic form decomposition residual <= 1e-10, k = 1..8");
  double worst = 0.0, gap = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 8; ++k) {
    auto r = qform_sweep(k, 10000, opt.seed + k, 0.1, 1.9, 1e-10);
    worst = std::max(worst, r.extremal);
    gap = std::min(gap, r.extra("min_lower_bound_gap"));
    if (r.extra("min_lower_bound_gap") < -1e-12) r.verdict = Verdict::fail;
    absorb(c, std::move(r));
  }
  c.seconds = seconds_since(t0);
  if (c.seconds > 5.0) c.passed = false;
  std::ostringstream os;
  os << "max residual " << format_real(worst) << ", min Q - (Xv)^2/k " << format_real(gap);
  c.detail = os.str();
  return c;
}

CriterionResult criterion_bochner(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  auto c = start(3, "Bochner slack >= -max(1e-9, 100 step^2), refinement shrinks excursions");
  const std::pair<HarmonicField, int> pairs[] = {
      {weiss(1.0), 1},       {im_exp_of(monomial(1.0, 1)), 1},
      {fefferman(0.05), 2},  {sector_field(2), 2},
      {sector_field(3), 3},  {im_exp_of(monomial(0.1, 3)), 3}};
  const GridSpec grid = GridSpec::disk(1.5, opt.bochner_grid_n, opt.bochner_grid_n);
  double worst_ratio = 0.0;
  for (const auto& [u, k] : pairs) {
    const QuotientField q(u, normal_form(k));
    auto coarse = bochner_sweep(k, q, grid, opt.step);
    auto fine = bochner_sweep(k, q, grid, opt.step / 2);
    const double e1 = coarse.extra("negative_excursion");
    const double e2 = fine.extra("negative_excursion");
    VerificationReport ref("bochner_refinement", k, Relation::at_most, 0.0);
    ref.add_param("pair", q.describe());
    ref.observe(e2 - e1 / 3, coarse.x_ext, coarse.y_ext, 0);
    ref.add_extra("excursion_step", e1);
    ref.add_extra("excursion_half_step", e2);
    ref.finalize();
    if (e1 > 0) worst_ratio = std::max(worst_ratio, e2 / e1);
    absorb(c, std::move(coarse));
    absorb(c, std::move(fine));
    absorb(c, std::move(ref));
  }
  std::ostringstream os;
  os << "worst min slack ";
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : c.reports)
    if (r.check == "bochner_slack") worst = std::min(worst, r.extremal);
  os << format_real(worst) << ", worst excursion ratio (half/full) " << format_real(worst_ratio);
  c.detail = os.str();
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_certificate(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  auto c = start(4, "gradient certificate |grad h| <= 4(k+1) sqrt(A), k <= 6");
  const CutoffSpec cutoff = cutoff_build();
  const GridSpec grid = GridSpec::disk(1.42, opt.certificate_grid_n, opt.certificate_grid_n);
  double worst = 0.0;
  for (const auto& [k, u] : library_pairs()) {
    const QuotientField q(u, normal_form(k));
    auto r = gradient_bound_certificate(k, q, cutoff, grid);
    worst = std::max(worst, r.extremal / r.bound);
    absorb(c, std::move(r));
  }
  std::ostringstream os;
  os << "A = " << format_real(cutoff.A) << ", worst sup/bound " << format_real(worst) << " over "
     << c.reports.size() << " quotients";
  c.detail = os.str();
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_sector_poisson(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  auto c = start(5, "sector Poisson reproduction <= 1e-8 and |grad log g| <= C2/C1");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_repro = 0.0, worst_ratio = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double opening = kPi / k;

    // Reproduction of v_k from its own boundary values.
    const SectorIntegrator integ(SectorBoundaryData::from_function(
        k, 16385, [k](double phi) { return std::sin(k * phi); }));
    VerificationReport repro("sector_reproduction", k, Relation::at_most, 1e-8);
    long idx = 0;
    for (const auto& g : grid_points(GridSpec::sector(opening, 0.5, 10, 10))) {
      const auto& p = g.point;
      const double exact = std::pow(p.r(), k) * std::sin(k * p.theta());
      repro.observe(std::abs(integ.poisson(p) - exact), p, idx++);
    }
    repro.finalize();
    worst_repro = std::max(worst_repro, repro.extremal);
    absorb(c, std::move(repro));

    // Kernel bounds and their stability under doubling.
    const KernelBounds kb = kernel_bounds(k, 0.5, 128);
    const KernelBounds kb2 = kernel_bounds(k, 0.5, 256);
    VerificationReport stab("kernel_bounds_stability", k, Relation::at_most, 0.01);
    stab.observe(std::max(std::abs(kb2.C1 - kb.C1) / kb.C1, std::abs(kb2.C2 - kb.C2) / kb.C2), 0.0,
                 0.0, 0);
    stab.add_extra("C1", kb.C1);
    stab.add_extra("C2", kb.C2);
    stab.add_extra("C1_lower", 1.0 / std::pow(1 + std::pow(0.5, k), 4));
    stab.finalize();
    if (kb2.C1 > kb.C1 || kb2.C2 < kb.C2 || kb.C1 < 1.0 / std::pow(1 + std::pow(0.5, k), 4) * (1 - 1e-12))
      stab.verdict = Verdict::fail;
    absorb(c, std::move(stab));

    // 10^4 points, 50 random nonnegative data vectors.
    std::vector<PlanePointd> points;
    for (const auto& g : grid_points(GridSpec::sector(opening, 0.5, 100, 100)))
      points.push_back(g.point);
    const int samples = 33;
    const PoissonWeights weights(k, samples, points);
    const double bound_g = kb.ratio();
    const double C = certified_constant(kb);
    VerificationReport rg("sector_grad_log_g", k, Relation::at_most, bound_g);
    VerificationReport rf("sector_log_gradient", k, Relation::at_most, C * k);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> data(samples);
      const bool sparse = trial % 5 == 4;
      for (auto& d : data) d = sparse ? (unit(rng) < 0.15 ? unit(rng) : 0.0) : unit(rng);
      if (std::all_of(data.begin(), data.end(), [](double d) { return d == 0.0; }))
        data[samples / 2] = 1.0;
      for (size_t i = 0; i < points.size(); ++i) {
        const GJet j = weights.at(i, data);
        if (!(j.g > 0)) throw NumericalBreakdown("g is not positive", points[i].x(), points[i].y());
        const Vec2d lg = j.grad / j.g;
        const long index = static_cast<long>(trial * points.size() + i);
        rg.observe(lg.norm(), points[i], index);
        const double r2k = std::pow(points[i].r(), 2 * k);
        const Vec2d er(std::cos(points[i].theta()), std::sin(points[i].theta()));
        const Vec2d lf = -2.0 * k * r2k / points[i].r() / (1 - r2k) * er;
        rf.observe((lg + lf).norm(), points[i], index);
      }
    }
    rg.finalize();
    rf.finalize();
    worst_ratio = std::max(worst_ratio, rg.extremal / rg.bound);
    absorb(c, std::move(rg));
    absorb(c, std::move(rf));
  }
  std::ostringstream os;
  os << "max reproduction error " << format_real(worst_repro) << ", worst sup|grad log g|/(C2/C1) "
     << format_real(worst_ratio);
  c.detail = os.str();
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_counterexamples(const SuiteOptions&) {
  const auto t0 = Clock::now();
  auto c = start(6, "Kenig slopes within 0.05 of t/2 - 1; Green quotient blow-up iff t < 2");
  const auto radii = geometric_radii(1e-5, 1e-2, 12);
  double worst_err = 0.0;
  for (double t : {1.2, 1.5, 1.8, 2.0, 2.5, 3.0}) {
    auto r = kenig_regularity(kenig_pair(t, 0.1), radii);
    worst_err = std::max(worst_err, r.extra("slope_error"));
    absorb(c, std::move(r));
  }
  int agree = 0;
  for (int i = 1; i <= 19; ++i) {
    const double t = 1.0 + 0.1 * i;
    auto r = green_quotient_regularity(t, default_green_pole(t), radii);
    agree += r.passed();
    absorb(c, std::move(r));
  }
  c.seconds = seconds_since(t0);
  if (c.seconds > 30.0) c.passed = false;
  std::ostringstream os;
  os << "max Kenig slope error " << format_real(worst_err) << ", Green verdicts matching theory "
     << agree << "/19";
  c.detail = os.str();
  return c;
}

CriterionResult criterion_oracle_consistency(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  auto c = start(7, "analytic vs FD jets improve >= 50x per 10x step refinement");
  struct Case {
    HarmonicField field;
    std::function<PlanePointd(std::mt19937_64&)> draw;
  };
  std::uniform_real_distribution<double> ur(0.05, 1.5), ut(-kPi, kPi);
  auto disk = [&](std::mt19937_64& g) { return PlanePointd::polar(ur(g), ut(g)); };
  auto in_sector = [](std::mt19937_64& g) {
    std::uniform_real_distribution<double> r(0.3, 1.5), t(0.1, kPi / 2 - 0.1);
    return PlanePointd::polar(r(g), t(g));
  };
  std::vector<Complex> mix{0.0, 0.5, 0.1};
  std::vector<double> disk_samples(96);
  for (int j = 0; j < 96; ++j) {
    const double phi = 2 * kPi * j / 96;
    disk_samples[j] = std::exp(std::cos(phi) + 0.3 * std::sin(2 * phi));
  }
  const std::vector<Case> cases = {
      {normal_form(3), disk},
      {weiss(1.0), disk},
      {positive_exp(0.5), disk},
      {im_exp_of(PowerSeries(mix)), disk},
      {shifted_power(0.5), disk},
      {moebius_of(PowerSeries(mix), 1.0, 0.25, 1.0), disk},
      {sector_field(2), disk},
      {sector_poisson_field(SectorBoundaryData(2, default_sector_samples(2))), in_sector},
      {fefferman(0.05), disk},
      {poisson_disk(DiskBoundaryData(disk_samples)), disk},
  };
  std::mt19937_64 rng(opt.seed);
  double worst_factor = std::numeric_limits<double>::infinity();
  for (const auto& cs : cases) {
    VerificationReport r("oracle_consistency", 0.0, Relation::at_least, 50.0);
    r.add_param("field", cs.field.describe());
    const Sampler f = cs.field.sampler();
    double coarse = 0.0, fine = 0.0;
    PlanePointd worst_p;
    for (int i = 0; i < 500; ++i) {
      const PlanePointd p = cs.draw(rng);
      const Jet2d exact = cs.field.jet(p);
      const double e1 = jet_distance(exact, fd_jet(f, p, 1e-2));
      const double e2 = jet_distance(exact, fd_jet(f, p, 1e-3));
      if (e1 > coarse) worst_p = p;
      coarse = std::max(coarse, e1);
      fine = std::max(fine, e2);
    }
    // A stencil that is exact for the field (quadratic polynomials) leaves
    // only roundoff at both steps; that counts as agreement.
    const double factor = coarse <= 1e-9 ? std::numeric_limits<double>::max() : coarse / fine;
    r.observe(factor, worst_p, 0);
    r.samples = 500;
    r.add_extra("error_step_1e-2", coarse);
    r.add_extra("error_step_1e-3", fine);
    r.finalize();
    worst_factor = std::min(worst_factor, factor);
    absorb(c, std::move(r));
  }
  std::ostringstream os;
  os << "worst improvement factor " << format_real(worst_factor) << " over " << cases.size()
     << " families";
  c.detail = os.str();
  c.seconds = seconds_since(t0);
  return c;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt, std::ostream* log) {
  using Fn = CriterionResult (*)(const SuiteOptions&);
  const Fn criteria[] = {criterion_pde_residual,   criterion_qform,
                         criterion_bochner,        criterion_certificate,
                         criterion_sector_poisson, criterion_counterexamples,
                         criterion_oracle_consistency};
  std::vector<CriterionResult> out;
  for (Fn fn : criteria) {
    out.push_back(fn(opt));
    if (log) {
      const auto& c = out.back();
      *log << "[" << (c.passed ? "PASS" : "FAIL") << "] criterion " << c.id << ": " << c.title
           << " (" << c.detail << "; " << c.seconds << " s)\n";
    }
  }
  return out;
}

}  // namespace sharedzero
