#include "sharedzero/counterexamples.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include "sharedzero/harmonic_library.hpp"

namespace sharedzero {

namespace {

constexpr double kPi = std::numbers::pi;

double opening_of(double t) { return 2 * kPi / t; }

// z^a with the argument of z in [0, 2pi).
Complex sector_pow(double a, const PlanePointd& p) {
  return std::exp(a * Complex(std::log(p.r()), p.arg_positive()));
}

bool in_open_sector(double t, const PlanePointd& p) {
  const double th = p.arg_positive();
  return p.r() > 0 && th > 0 && th < opening_of(t);
}

void require_radii(const std::vector<double>& radii) {
  if (radii.size() < 8) throw DomainError("slope fit needs at least 8 radii");
  for (double r : radii)
    if (!(r > 1e-6 && r < 0.5)) throw DomainError("probe radii must lie in (1e-6, 0.5)");
}

VerificationReport regularity_report(const std::string& name, double t, const SlopeFit& fit,
                                     double probe_theta) {
  const bool expect_bounded = t >= 2.0;
  VerificationReport rep(name, t, expect_bounded ? Relation::at_least : Relation::at_most,
                         kBlowupSlope);
  const auto p = PlanePointd::polar(fit.radii.front(), probe_theta);
  rep.observe(fit.slope, p, 0);
  rep.samples = static_cast<long>(fit.radii.size());
  rep.add_extra("slope", fit.slope);
  rep.add_extra("predicted_slope", t / 2 - 1);
  rep.add_extra("fit_residual", fit.max_residual);
  rep.note = fit.slope < kBlowupSlope ? "blow-up" : "bounded";
  rep.finalize();
  return rep;
}

}  // namespace

double sector_im_power(double a, double t, double x, double y) {
  const auto p = PlanePointd::cartesian(x, y);
  if (p.r() == 0) return a > 0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  if (p.arg_positive() > opening_of(t) + 1e-12) return std::numeric_limits<double>::quiet_NaN();
  return std::pow(p.r(), a) * std::sin(a * p.arg_positive());
}

Jet2d sector_im_power_jet(double a, double t, const PlanePointd& p) {
  if (!(p.r() > 0)) throw DomainError("sector power: the origin is a branch point");
  if (p.arg_positive() > opening_of(t) + 1e-12) throw DomainError("sector power: outside the sector");
  const Complex za = sector_pow(a, p);
  const Complex z(p.x(), p.y());
  const Complex g1 = a * za / z;
  const Complex g2 = a * (a - 1) * za / (z * z);
  return im_part_jet({za, g1, g2});
}

double KenigPair::opening() const { return opening_of(t); }

double KenigPair::v(double x, double y) const { return sector_im_power(t / 2, t, x, y); }

double KenigPair::u(double x, double y) const {
  return sector_im_power(t / 2, t, x, y) + eps * sector_im_power(t, t, x, y);
}

Jet2d KenigPair::v_jet(const PlanePointd& p) const { return sector_im_power_jet(t / 2, t, p); }

Jet2d KenigPair::u_jet(const PlanePointd& p) const {
  const Jet2d a = sector_im_power_jet(t / 2, t, p);
  const Jet2d b = sector_im_power_jet(t, t, p);
  Jet2d j;
  j.value = a.value + eps * b.value;
  j.grad = a.grad + eps * b.grad;
  j.hess = a.hess + eps * b.hess;
  return j;
}

Vec2d KenigPair::log_quotient_gradient(const PlanePointd& p) const {
  if (!in_open_sector(t, p)) throw DomainError("Kenig pair: point outside the open sector");
  const Jet2d ju = u_jet(p), jv = v_jet(p);
  return ju.grad / ju.value - jv.grad / jv.value;
}

double kenig_positivity_threshold(double t, int samples) {
  if (!(t > 1)) throw DomainError("Kenig pair: t must exceed 1");
  double best = std::numeric_limits<double>::infinity();
  const double r = 2.0;
  for (int j = 1; j < samples; ++j) {
    const double th = opening_of(t) * j / samples;
    const double big = std::pow(r, t) * std::sin(t * th);
    if (big >= 0) continue;
    const double small = std::pow(r, t / 2) * std::sin(t * th / 2);
    best = std::min(best, small / -big);
  }
  return best;
}

KenigPair kenig_pair(double t, double eps) {
  if (!(t > 1)) throw DomainError("Kenig pair: t must exceed 1");
  if (!(eps > 0)) throw DomainError("Kenig pair: eps must be positive");
  KenigPair k;
  k.t = t;
  k.eps = eps;
  k.threshold = kenig_positivity_threshold(t);
  if (!(eps < k.threshold)) throw DomainError("Kenig pair: eps too large, u changes sign in S");
  return k;
}

SlopeFit fit_log_log(const std::vector<double>& radii, const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw DomainError("slope fit: need matching radii and values");
  const double n = static_cast<double>(radii.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(values[i] > 0)) throw NumericalBreakdown("slope fit: nonpositive value", radii[i], 0.0);
    const double x = std::log(radii[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  for (size_t i = 0; i < radii.size(); ++i) {
    const double pred = fit.intercept + fit.slope * std::log(radii[i]);
    fit.max_residual = std::max(fit.max_residual, std::abs(std::log(values[i]) - pred));
  }
  fit.radii = radii;
  fit.values = values;
  return fit;
}

std::vector<double> geometric_radii(double r_lo, double r_hi, int count) {
  if (count < 2 || !(r_lo > 0) || !(r_hi > r_lo)) throw DomainError("geometric_radii: bad range");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = r_lo * std::pow(r_hi / r_lo, double(i) / (count - 1));
  return out;
}

SlopeFit blowup_exponent(const KenigPair& pair, const std::vector<double>& radii,
                         double theta_probe) {
  require_radii(radii);
  const double th = theta_probe < 0 ? pair.opening() / 2 : theta_probe;
  std::vector<double> values;
  for (double r : radii) values.push_back(pair.log_quotient_gradient(PlanePointd::polar(r, th)).norm());
  return fit_log_log(radii, values);
}

double sector_green(double t, const PlanePointd& p, const PlanePointd& z) {
  if (!(t > 1)) throw DomainError("sector Green function: t must exceed 1");
  if (!in_open_sector(t, p) || !in_open_sector(t, z))
    throw DomainError("sector Green function: points must lie in the open sector");
  const Complex w = sector_pow(t / 2, z), wp = sector_pow(t / 2, p);
  const double d2 = std::norm(w - wp);
  if (d2 == 0.0) throw DomainError("sector Green function: z equals the pole");
  return std::log1p(4 * w.imag() * wp.imag() / d2) / (4 * kPi);
}

Vec2d sector_green_gradient(double t, const PlanePointd& p, const PlanePointd& z) {
  if (!in_open_sector(t, p) || !in_open_sector(t, z))
    throw DomainError("sector Green function: points must lie in the open sector");
  const Complex w = sector_pow(t / 2, z), wp = sector_pow(t / 2, p);
  if (w == wp) throw DomainError("sector Green function: z equals the pole");
  const Complex dw = (t / 2) * w / Complex(z.x(), z.y());
  const Complex dl = 1.0 / (w - std::conj(wp)) - 1.0 / (w - wp);
  const Complex g = std::conj(dl * dw) / (2 * kPi);
  return {g.real(), g.imag()};
}

PlanePointd default_green_pole(double t) { return PlanePointd::polar(3.0, 0.3 * opening_of(t)); }

VerificationReport green_quotient_regularity(double t, const PlanePointd& p,
                                             const std::vector<double>& radii) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(p.r() > 2)) throw DomainError("green_quotient_regularity: the pole needs |p| > 2");
  require_radii(radii);
  const double th = opening_of(t) / 2;
  std::vector<double> values;
  for (double r : radii) {
    const auto z = PlanePointd::polar(r, th);
    const Jet2d jv = sector_im_power_jet(t / 2, t, z);
    const Vec2d g = sector_green_gradient(t, p, z) / sector_green(t, p, z) - jv.grad / jv.value;
    values.push_back(g.norm());
  }
  auto rep = regularity_report("green_quotient_regularity", t, fit_log_log(radii, values), th);
  rep.add_param("pole_r", p.r());
  rep.add_param("pole_theta", p.arg_positive());
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerificationReport kenig_regularity(const KenigPair& pair, const std::vector<double>& radii) {
  const auto t0 = std::chrono::steady_clock::now();
  const SlopeFit fit = blowup_exponent(pair, radii);
  auto rep = regularity_report("kenig_regularity", pair.t, fit, pair.opening() / 2);
  rep.add_param("eps", pair.eps);
  const double err = std::abs(fit.slope - (pair.t / 2 - 1));
  rep.add_extra("slope_error", err);
  if (err > 0.05) rep.verdict = Verdict::fail;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace sharedzero
