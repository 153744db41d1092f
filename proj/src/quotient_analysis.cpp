#include "sharedzero/quotient_analysis.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "sharedzero/quadrature.hpp"

namespace sharedzero {

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec reference_grid() { return GridSpec::disk(1.9, 81, 81); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Off-Z jet of log|u| - log|v| from the analytic jets.
Jet2d log_quotient_jet(const Jet2d& ju, const Jet2d& jv) {
  Jet2d h;
  h.value = std::log(std::abs(ju.value)) - std::log(std::abs(jv.value));
  const Vec2d gu = ju.grad / ju.value;
  const Vec2d gv = jv.grad / jv.value;
  h.grad = gu - gv;
  const Mat2d hu = ju.hessian() / ju.value - gu * gu.transpose();
  const Mat2d hv = jv.hessian() / jv.value - gv * gv.transpose();
  h.set_hessian(hu - hv);
  return h;
}

Jet2d off_band_jet(const QuotientField& q, const Vec2d& z) {
  const auto p = PlanePointd::cartesian(z);
  return log_quotient_jet(q.u().jet(p), q.v().jet(p));
}

// Average of the off-band jets at p +- d n.
Jet2d symmetric_average(const QuotientField& q, const Vec2d& z, const Vec2d& n, double d) {
  const Jet2d a = off_band_jet(q, z + d * n);
  const Jet2d b = off_band_jet(q, z - d * n);
  Jet2d m;
  m.value = 0.5 * (a.value + b.value);
  m.grad = 0.5 * (a.grad + b.grad);
  m.hess = 0.5 * (a.hess + b.hess);
  return m;
}

void require_inside(const QuotientField& q, const PlanePointd& p) {
  if (!(p.r() < q.domain_radius())) throw DomainError("point lies outside the fields' domain");
}

}  // namespace

QuotientField::QuotientField(HarmonicField u, HarmonicField v, NoCheck)
    : u_(std::move(u)), v_(std::move(v)) {}

QuotientField::QuotientField(HarmonicField u, HarmonicField v)
    : QuotientField(std::move(u), std::move(v), NoCheck{}) {
  const auto rep = membership_check(u_, v_, reference_grid());
  if (!rep.passed())
    throw DomainError("u and v do not share a zero set (" + std::to_string(long(rep.extremal)) +
                      " lattice violations)");
}

QuotientField QuotientField::unchecked(HarmonicField u, HarmonicField v) {
  return QuotientField(std::move(u), std::move(v), NoCheck{});
}

Jet2d h_jet(const QuotientField& q, const PlanePointd& p) {
  require_inside(q, p);
  const auto& zeros = q.zeros();
  if (zeros.has_singular_origin() && p.r() < 1e-12)
    throw DomainError("h_jet: the multiple point of the zero set is excluded");
  const double dist = zeros.distance(p.x(), p.y());
  if (!(dist < kAnalyticBand)) {
    const Jet2d ju = q.u().jet(p), jv = q.v().jet(p);
    if (ju.value == 0.0 || jv.value == 0.0)
      throw NumericalBreakdown("h_jet: u or v vanishes off the declared zero set", p.x(), p.y());
    return log_quotient_jet(ju, jv);
  }

  const Vec2d n = zeros.normal(p.x(), p.y());
  const double du = q.u().jet(p).grad.dot(n);
  const double dv = q.v().jet(p).grad.dot(n);
  if (!(std::abs(dv) >= 1e-12))
    throw DomainError("h_jet: normal derivative of v vanishes on the zero set");

  // Offset must keep p +- 2d n away from the other rays of a star.
  double d = 1e-3;
  if (zeros.kind() == ZeroSetDescriptor::Kind::star && zeros.k() >= 2)
    d = std::min(d, 0.1 * p.r() * std::sin(kPi / (2 * zeros.k())));
  const Vec2d z = p.xy();
  const Jet2d near = symmetric_average(q, z, n, d);
  const Jet2d far = symmetric_average(q, z, n, 2 * d);
  Jet2d h;
  h.value = std::log(std::abs(du)) - std::log(std::abs(dv));
  h.grad = (4 * near.grad - far.grad) / 3;
  h.hess = (4 * near.hess - far.hess) / 3;
  return h;
}

Sampler gradient_energy(const QuotientField& q) {
  return [q](double x, double y) {
    const auto p = PlanePointd::cartesian(x, y);
    if (!(p.r() < q.domain_radius())) return std::numeric_limits<double>::quiet_NaN();
    return h_jet(q, p).grad.squaredNorm();
  };
}

double pde_residual(const QuotientField& q, const PlanePointd& p) {
  const Jet2d h = h_jet(q, p);
  const Jet2d v = q.v().jet(p);
  return v.value * h.laplacian() + 2 * v.grad.dot(h.grad) + v.value * h.grad.squaredNorm();
}

namespace {

void require_stencil_clear(const QuotientField& q, const PlanePointd& p, double step) {
  if (!(step > 0)) throw DomainError("step must be positive");
  const double reach = std::sqrt(2.0) * step * 1.01;
  if (!(q.zeros().distance(p.x(), p.y()) > reach))
    throw DomainError("FD stencil crosses the zero set");
  if (q.zeros().has_singular_origin() && !(p.r() > reach))
    throw DomainError("FD stencil reaches the origin");
  if (!(p.r() + reach < q.domain_radius())) throw DomainError("FD stencil leaves the domain");
}

}  // namespace

double deltaF_residual(const QuotientField& q, const PlanePointd& p, double step) {
  require_stencil_clear(q, p, step);
  const Jet2d F = fd_jet(gradient_energy(q), p, step);
  const Jet2d h = h_jet(q, p);
  const Jet2d v = q.v().jet(p);
  const double vv = v.value;
  const double gh_gv = h.grad.dot(v.grad);
  const double rhs = 2 * vv * vv * h.hessian_norm2() + 4 * gh_gv * gh_gv -
                     4 * vv * v.hessian_form(h.grad, h.grad) - 2 * vv * F.grad.dot(v.grad) -
                     2 * vv * vv * F.grad.dot(h.grad);
  return vv * vv * F.laplacian() - rhs;
}

namespace {

using Ext = long double;

// Evaluated in extended precision: for k = 8 near r = 2 the terms reach
// 1e5 and the identity must hold to 1e-10 absolute.
struct QformTerms {
  Ext q, xv2, dtheta2, r2k;
};

QformTerms qform_terms(int k, const PlanePointd& p, const Vec2d& x) {
  if (k < 1) throw DomainError("qform: k must be >= 1");
  if (!(p.r() > 0)) throw DomainError("qform: p.r must be positive");
  const auto pe = PlanePoint<Ext>::polar(p.r(), p.theta());
  const Jet2<Ext> v = normal_form_polar_jet_t<Ext>(k, pe);
  const Vec2<Ext> xe = x.cast<Ext>();
  const Ext xv = v.grad.dot(xe);
  QformTerms t;
  t.q = xv * xv - v.value * v.hessian_form(xe, xe);
  t.xv2 = xv * xv;
  t.dtheta2 = (xe.y() / pe.r()) * (xe.y() / pe.r());
  t.r2k = std::pow(pe.r(), Ext(2 * k));
  return t;
}

}  // namespace

double qform_eval(int k, const PlanePointd& p, const Vec2d& x) {
  return static_cast<double>(qform_terms(k, p, x).q);
}

double qform_decomposition_residual(int k, const PlanePointd& p, const Vec2d& x) {
  const QformTerms t = qform_terms(k, p, x);
  return static_cast<double>(t.q - t.xv2 / k - Ext(k) * (k - 1) * t.r2k * t.dtheta2);
}

BochnerSample bochner_slack(int k, const QuotientField& q, const PlanePointd& p, double step) {
  if (q.v().family() != Family::normal_form || q.v().zero_set().k() != k)
    throw DomainError("bochner_slack: v must be the normal form v_k");
  require_stencil_clear(q, p, step);
  const Jet2d F = fd_jet(gradient_energy(q), p, step);
  const Jet2d h = h_jet(q, p);
  const Jet2d v = q.v().jet(p);
  BochnerSample s;
  s.point = p;
  s.v = v.value;
  s.F = h.grad.squaredNorm();
  const double vv = v.value;
  s.lhs = vv * vv * F.laplacian() + 2 * vv * F.grad.dot(v.grad) + 2 * vv * vv * F.grad.dot(h.grad);
  s.rhs = vv * vv * s.F * s.F / (k + 1);
  s.slack = s.lhs - s.rhs;
  return s;
}

double pairing_ratio(const Sampler& F, int k, const PlanePointd& p) {
  if (k < 1) throw DomainError("pairing_ratio: k must be >= 1");
  const auto star = ZeroSetDescriptor::star(k);
  if (!(p.r() > 0)) throw DomainError("pairing_ratio: p must not be the origin");
  if (!(star.distance(p.x(), p.y()) <= 1e-9 * std::max(1.0, p.r())))
    throw DomainError("pairing_ratio: p is not on a ray of the star");
  const Vec2d n = star.normal(p.x(), p.y());
  const double fd = 1e-5;
  auto ratio = [&](const Vec2d& z) {
    const auto zp = PlanePointd::cartesian(z);
    const Jet2d v = jet_polar_to_cartesian(normal_form_polar_jet(k, zp), zp);
    const Vec2d gF((F(z.x() + fd, z.y()) - F(z.x() - fd, z.y())) / (2 * fd),
                   (F(z.x(), z.y() + fd) - F(z.x(), z.y() - fd)) / (2 * fd));
    if (!gF.allFinite()) throw DomainError("pairing_ratio: F is not finite near p");
    return gF.dot(v.grad) / v.value;
  };
  const double delta = 5e-4 * std::min(1.0, p.r());
  const Vec2d z = p.xy();
  auto side = [&](double s) {
    return 2 * ratio(z + s * delta * n) - ratio(z + 2 * s * delta * n);
  };
  const double plus = side(1.0), minus = side(-1.0);
  const double scale = std::max(std::abs(plus), std::abs(minus));
  if (std::abs(plus - minus) > 1e-4 * scale && std::abs(plus - minus) > 1e-9)
    throw DomainError("pairing_ratio: one-sided limits disagree; F is not smooth across Z");
  // The ratio is smooth across the ray, so symmetric averages are even in delta.
  auto even = [&](double d) { return 0.5 * (ratio(z + d * n) + ratio(z - d * n)); };
  return (4 * even(delta) - even(2 * delta)) / 3;
}

double divide_by_linear(const Sampler& f, const LinearFormd& l, const PlanePointd& p) {
  const Vec2d n = l.normal();
  const Vec2d along(-l.b(), l.a());
  for (int i = -10; i <= 10; ++i) {
    const Vec2d z = 0.19 * i * along;
    const double value = f(z.x(), z.y());
    if (!std::isfinite(value)) continue;
    if (std::abs(value) > 1e-10) throw DomainError("divide_by_linear: f does not vanish on the line");
  }
  const double s = l(p.xy());
  const double t = along.dot(p.xy());
  const double eta = 1e-3;
  auto normal_derivative = [&](double tau) {
    const Vec2d z = tau * s * n + t * along;
    auto g = [&](double e) {
      const Vec2d w = z + e * n;
      return f(w.x(), w.y());
    };
    return (-g(2 * eta) + 8 * g(eta) - 8 * g(-eta) + g(-2 * eta)) / (12 * eta);
  };
  static const GaussLegendre rule(64);
  const double q = rule.integrate(normal_derivative, 0.0, 1.0);
  if (!std::isfinite(q)) throw DomainError("divide_by_linear: f is not finite along the segment");
  return q;
}

// ---------------------------------------------------------------------------
// Cutoff

namespace {

double bump(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
double bump1(double t) {
  const double b = bump(t);
  return b == 0.0 ? 0.0 : b / (t * t);
}
double bump2(double t) {
  const double b = bump(t);
  return b == 0.0 ? 0.0 : b * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
}

}  // namespace

double CutoffSpec::chi(double s) {
  const double p = bump(2 - s), m = bump(s - 1);
  if (p + m == 0.0) return s < 1.5 ? 1.0 : 0.0;
  return p / (p + m);
}

double CutoffSpec::dchi(double s) {
  const double p = bump(2 - s), m = bump(s - 1);
  const double sum = p + m;
  if (sum == 0.0) return 0.0;
  const double p1 = -bump1(2 - s), m1 = bump1(s - 1);
  return (p1 * m - p * m1) / (sum * sum);
}

double CutoffSpec::d2chi(double s) {
  const double p = bump(2 - s), m = bump(s - 1);
  const double sum = p + m;
  if (sum == 0.0) return 0.0;
  const double p1 = -bump1(2 - s), m1 = bump1(s - 1);
  const double p2 = bump2(2 - s), m2 = bump2(s - 1);
  const double num = p1 * m - p * m1;
  const double dnum = p2 * m - p * m2;
  return dnum / (sum * sum) - 2 * num * (p1 + m1) / (sum * sum * sum);
}

CutoffSpec cutoff_build(int samples) {
  if (samples < 2) throw DomainError("cutoff_build: need at least 2 samples");
  CutoffSpec c;
  c.samples = samples;
  double a = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = 2.0 * i / (samples - 1);
    const double d1 = CutoffSpec::dchi(s);
    const double lap = 4 * d1 + 4 * s * CutoffSpec::d2chi(s);
    const double chi = CutoffSpec::chi(s);
    a = std::max(a, -d1);
    a = std::max(a, -lap);
    if (chi > 0) a = std::max(a, 4 * s * d1 * d1 / chi);
  }
  c.raw_A = a;
  c.A = 1.05 * a;
  return c;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

bool skip_point(const QuotientField& q, const GridPoint& g, double band) {
  if (g.flagged) return true;
  if (q.zeros().kind() == ZeroSetDescriptor::Kind::star && g.point.r() < kOriginExclusion)
    return true;
  if (band > 0 && q.zeros().distance(g.point.x(), g.point.y()) < band) return true;
  return !(g.point.r() < q.domain_radius());
}

double k_of(const QuotientField& q) {
  const auto& z = q.zeros();
  if (z.kind() == ZeroSetDescriptor::Kind::star) return z.k();
  if (z.kind() == ZeroSetDescriptor::Kind::axis) return 1;
  return 0;
}

}  // namespace

VerificationReport pde_residual_sweep(const QuotientField& q, const GridSpec& grid, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep("pde_residual", k_of(q), Relation::at_most, tol);
  rep.add_param("pair", q.describe());
  rep.add_param("radius", grid.radius);
  for (const auto& g : grid_points(grid, q.zeros())) {
    if (skip_point(q, g, kAnalyticBand)) continue;
    rep.observe(std::abs(pde_residual(q, g.point)), g.point, g.index);
  }
  rep.wall_time = seconds_since(t0);
  rep.finalize();
  return rep;
}

VerificationReport deltaF_sweep(const QuotientField& q, const GridSpec& grid, double step,
                                double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep("deltaF_residual", k_of(q), Relation::at_most, tol);
  rep.add_param("pair", q.describe());
  rep.add_param("step", step);
  const double band = std::max(grid.exclusion_band, 10 * step);
  for (const auto& g : grid_points(grid, q.zeros())) {
    if (skip_point(q, g, band)) continue;
    if (!(g.point.r() + 2 * step < q.domain_radius())) continue;
    rep.observe(std::abs(deltaF_residual(q, g.point, step)), g.point, g.index);
  }
  rep.wall_time = seconds_since(t0);
  rep.finalize();
  return rep;
}

double bochner_tolerance(double step) { return std::max(1e-9, 100.0 * step * step); }

VerificationReport bochner_sweep(int k, const QuotientField& q, const GridSpec& grid,
                                 double step) {
  const auto t0 = std::chrono::steady_clock::now();
  const double tol = bochner_tolerance(step);
  VerificationReport rep("bochner_slack", k, Relation::at_least, -tol);
  rep.add_param("pair", q.describe());
  rep.add_param("step", step);
  const double band = std::max(grid.exclusion_band, 10 * step);
  double excursion = 0.0;
  for (const auto& g : grid_points(grid, q.zeros())) {
    if (skip_point(q, g, band)) continue;
    if (!(g.point.r() + 2 * step < q.domain_radius())) continue;
    const auto s = bochner_slack(k, q, g.point, step);
    rep.observe(s.slack, g.point, g.index);
    excursion = std::max(excursion, -s.slack);
  }
  rep.add_extra("negative_excursion", excursion);
  rep.add_extra("tolerance", tol);
  rep.wall_time = seconds_since(t0);
  rep.finalize();
  return rep;
}

VerificationReport qform_sweep(int k, long count, std::uint64_t seed, double r_min, double r_max,
                               double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep("qform_decomposition", k, Relation::at_most, tol);
  rep.add_param("seed", std::to_string(seed));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(r_min, r_max), ut(-kPi, kPi), ux(-1.0, 1.0);
  double min_gap = std::numeric_limits<double>::infinity();
  for (long i = 0; i < count; ++i) {
    const auto p = PlanePointd::polar(ur(rng), ut(rng));
    Vec2d x(ux(rng), ux(rng));
    if (x.norm() > 1) x.normalize();
    rep.observe(std::abs(qform_decomposition_residual(k, p, x)), p, i);
    const double xv = normal_form_polar_jet(k, p).grad.dot(x);
    min_gap = std::min(min_gap, qform_eval(k, p, x) - xv * xv / k);
  }
  rep.add_extra("min_lower_bound_gap", min_gap);
  rep.wall_time = seconds_since(t0);
  rep.finalize();
  return rep;
}

VerificationReport gradient_bound_certificate(int k, const QuotientField& q,
                                              const CutoffSpec& cutoff, const GridSpec& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const double bound = 4.0 * (k + 1) * std::sqrt(cutoff.A);
  VerificationReport rep("gradient_certificate", k, Relation::at_most, bound);
  rep.add_param("pair", q.describe());
  rep.add_param("A", cutoff.A);
  double sup_b1 = 0.0;
  for (const auto& g : grid_points(grid, q.zeros())) {
    if (skip_point(q, g, 0.0)) continue;
    const double F = h_jet(q, g.point).grad.squaredNorm();
    const double phi = cutoff.phi(g.point.x(), g.point.y());
    rep.observe(std::sqrt(phi * F), g.point, g.index);
    if (g.point.r() <= 1.0) sup_b1 = std::max(sup_b1, std::sqrt(F));
  }
  rep.add_extra("sup_grad_h_B1", sup_b1);
  rep.add_extra("bound", bound);
  // Root of t^2/(k+1) - 2 sqrt(A) t - (4k+3) A = 0 at a maximum of phi F.
  const double sa = std::sqrt(cutoff.A);
  rep.add_extra("quadratic_root", (k + 1) * sa * (1 + std::sqrt(1 + (4.0 * k + 3) / (k + 1))));
  rep.wall_time = seconds_since(t0);
  rep.finalize();
  if (sup_b1 > bound) rep.verdict = Verdict::fail;
  return rep;
}

}  // namespace sharedzero
