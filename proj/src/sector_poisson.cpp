#include "sharedzero/sector_poisson.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include "sharedzero/quadrature.hpp"

namespace sharedzero {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

// Value and gradient of K at w = z^k with derivative dw = k z^{k-1}.
struct KernelTerms {
  double K;
  Vec2d grad;
};

KernelTerms kernel_terms(Complex w, Complex dw, Complex zeta) {
  const Complex a = zeta - w;
  const Complex b = std::conj(zeta) - w;
  const double d1 = std::norm(a), d2 = std::norm(b);
  const double K = 1.0 / (d1 * d2);
  const Complex cdw = std::conj(dw);
  const Complex g1 = -2.0 * a * cdw;
  const Complex g2 = -2.0 * b * cdw;
  const Complex g = -K * (g1 / d1 + g2 / d2);
  return {K, Vec2d(g.real(), g.imag())};
}

Complex ipow(const PlanePointd& z, int n) {
  if (n == 0) return 1.0;
  return std::polar(std::pow(z.r(), n), n * z.theta());
}

void require_sector(const PlanePointd& z, int k) {
  if (k < 1) throw DomainError("sector kernel: k must be >= 1");
  if (!(z.r() < 1)) throw DomainError("sector kernel: |z| must be < 1");
  if (z.r() == 0) return;
  const double t = z.theta();
  if (t < -1e-12 || t > kPi / k + 1e-12) throw DomainError("sector kernel: z lies outside S_k");
}

Vec2d log_factor_gradient(const PlanePointd& z, int k) {
  if (z.r() == 0) return Vec2d::Zero();
  const double r2k = std::pow(z.r(), 2 * k);
  const double d = -2.0 * k * r2k / z.r() / (1 - r2k);
  return d * Vec2d(std::cos(z.theta()), std::sin(z.theta()));
}

}  // namespace

double kernel(const PlanePointd& z, double phi, int k) {
  require_sector(z, k);
  return kernel_terms(ipow(z, k), 0.0, std::polar(1.0, k * phi)).K;
}

Vec2d kernel_gradient(const PlanePointd& z, double phi, int k) {
  require_sector(z, k);
  return kernel_terms(ipow(z, k), double(k) * ipow(z, k - 1), std::polar(1.0, k * phi)).grad;
}

SectorIntegrator::SectorIntegrator(const SectorBoundaryData& data) : data_(data) {
  const int panels = data.size() - 1;
  m0_ = std::max(2, (64 + panels - 1) / panels);
}

const SectorIntegrator::Level& SectorIntegrator::level(int l) const {
  while (static_cast<int>(levels_.size()) <= l) {
    const int m = m0_ << levels_.size();
    const auto rule = composite_gauss_legendre(0.0, data_.opening(), data_.size() - 1, m);
    Level lv;
    lv.a.resize(rule.nodes.size());
    lv.zeta.resize(rule.nodes.size());
    for (size_t n = 0; n < rule.nodes.size(); ++n) {
      const double phi = rule.nodes[n];
      lv.a[n] = rule.weights[n] * std::sin(data_.k() * phi) * data_(phi);
      lv.zeta[n] = std::polar(1.0, data_.k() * phi);
    }
    levels_.push_back(std::move(lv));
  }
  return levels_[l];
}

GJet SectorIntegrator::level_eval(int l, Complex w, Complex dw) const {
  const Level& lv = level(l);
  GJet out;
  for (size_t n = 0; n < lv.a.size(); ++n) {
    if (lv.a[n] == 0.0) continue;
    const auto t = kernel_terms(w, dw, lv.zeta[n]);
    out.g += lv.a[n] * t.K;
    out.grad += lv.a[n] * t.grad;
  }
  out.nodes = static_cast<int>(lv.a.size());
  return out;
}

GJet SectorIntegrator::eval(const PlanePointd& z) const {
  require_sector(z, data_.k());
  const int k = data_.k();
  const Complex w = ipow(z, k);
  const Complex dw = double(k) * ipow(z, k - 1);
  GJet prev = level_eval(0, w, dw);
  for (int l = 1; l < 8; ++l) {
    GJet next = level_eval(l, w, dw);
    if (std::abs(next.g - prev.g) < 1e-10 * std::max(1.0, std::abs(next.g))) return next;
    prev = next;
  }
  throw NumericalBreakdown("sector quadrature did not converge", z.x(), z.y());
}

double SectorIntegrator::poisson(const PlanePointd& z) const {
  require_sector(z, data_.k());
  if (data_.is_zero()) return 0.0;
  const int k = data_.k();
  const double rk = std::pow(z.r(), k);
  return 2.0 * k / kPi * rk * (1 - rk * rk) * std::sin(k * z.theta()) * eval(z).g;
}

GJet g_eval(const SectorBoundaryData& data, const PlanePointd& z) {
  return SectorIntegrator(data).eval(z);
}

double poisson_eval(const SectorBoundaryData& data, const PlanePointd& z) {
  return SectorIntegrator(data).poisson(z);
}

Vec2d log_quotient_gradient(const SectorBoundaryData& data, const PlanePointd& z) {
  const GJet j = g_eval(data, z);
  return log_factor_gradient(z, data.k()) + j.grad / j.g;
}

PoissonWeights::PoissonWeights(int k, int samples, std::vector<PlanePointd> points)
    : k_(k), samples_(samples), points_(std::move(points)) {
  if (k < 1 || samples < 16) throw DomainError("PoissonWeights: need k >= 1 and >= 16 samples");
  const int panels = samples - 1;
  const int m = std::max(8, (128 + panels - 1) / panels);
  const double opening = kPi / k;
  const double h = opening / panels;
  const auto rule = composite_gauss_legendre(0.0, opening, panels, m);
  std::vector<Complex> zeta(rule.nodes.size());
  std::vector<double> base(rule.nodes.size()), left(rule.nodes.size());
  for (size_t n = 0; n < rule.nodes.size(); ++n) {
    const double phi = rule.nodes[n];
    zeta[n] = std::polar(1.0, k * phi);
    base[n] = rule.weights[n] * std::sin(k * phi);
    left[n] = (rule.panel[n] + 1) - phi / h;  // hat weight of the left sample
  }
  const size_t total = points_.size() * static_cast<size_t>(samples);
  w_.assign(total, 0.0);
  wx_.assign(total, 0.0);
  wy_.assign(total, 0.0);
  for (size_t i = 0; i < points_.size(); ++i) {
    require_sector(points_[i], k);
    const Complex w = ipow(points_[i], k);
    const Complex dw = double(k) * ipow(points_[i], k - 1);
    const size_t row = i * samples;
    for (size_t n = 0; n < rule.nodes.size(); ++n) {
      const auto t = kernel_terms(w, dw, zeta[n]);
      const int j = rule.panel[n];
      const double wl = base[n] * left[n], wr = base[n] * (1 - left[n]);
      w_[row + j] += wl * t.K;
      w_[row + j + 1] += wr * t.K;
      wx_[row + j] += wl * t.grad.x();
      wx_[row + j + 1] += wr * t.grad.x();
      wy_[row + j] += wl * t.grad.y();
      wy_[row + j + 1] += wr * t.grad.y();
    }
  }
}

GJet PoissonWeights::at(size_t i, const std::vector<double>& data) const {
  if (static_cast<int>(data.size()) != samples_) throw DomainError("PoissonWeights: wrong data size");
  GJet out;
  const size_t row = i * samples_;
  for (int j = 0; j < samples_; ++j) {
    out.g += w_[row + j] * data[j];
    out.grad.x() += wx_[row + j] * data[j];
    out.grad.y() += wy_[row + j] * data[j];
  }
  return out;
}

KernelBounds kernel_bounds(int k, double r_max, int resolution) {
  if (k < 1) throw DomainError("kernel_bounds: k must be >= 1");
  if (!(r_max > 0 && r_max < 1)) throw DomainError("kernel_bounds: r_max must lie in (0, 1)");
  if (resolution < 64) throw DomainError("kernel_bounds: resolution must be >= 64");
  KernelBounds kb;
  kb.k = k;
  kb.r_max = r_max;
  kb.resolution = resolution;
  kb.C1 = std::numeric_limits<double>::infinity();
  const double opening = kPi / k;
  std::vector<Complex> zeta(resolution + 1);
  for (int c = 0; c <= resolution; ++c) zeta[c] = std::polar(1.0, k * opening * c / resolution);
  for (int a = 0; a <= resolution; ++a) {
    const double r = r_max * a / resolution;
    for (int b = 0; b <= resolution; ++b) {
      const auto z = PlanePointd::polar(r, opening * b / resolution);
      const Complex w = ipow(z, k);
      const Complex dw = double(k) * ipow(z, k - 1);
      for (int c = 0; c <= resolution; ++c) {
        const auto t = kernel_terms(w, dw, zeta[c]);
        kb.C1 = std::min(kb.C1, t.K);
        kb.C2 = std::max(kb.C2, t.grad.norm());
      }
      if (r == 0) break;
    }
  }
  return kb;
}

double log_factor_gradient_sup(int k, double r_max) {
  const double r2k = std::pow(r_max, 2 * k);
  return 2.0 * k * r2k / r_max / (1 - r2k);
}

double certified_constant(const KernelBounds& kb) {
  return kb.ratio() + log_factor_gradient_sup(kb.k, kb.r_max) / kb.k;
}

VerificationReport sector_log_gradient_check(const SectorBoundaryData& data, const GridSpec& grid,
                                             const KernelBounds& kb) {
  const auto t0 = std::chrono::steady_clock::now();
  const int k = data.k();
  if (kb.k != k) throw DomainError("sector_log_gradient_check: kernel bounds for another k");
  if (grid.radius > kb.r_max + 1e-12)
    throw DomainError("sector_log_gradient_check: grid exceeds the certified radius");
  const double C = certified_constant(kb);
  VerificationReport rep("sector_log_gradient", k, Relation::at_most, C * k);
  rep.add_param("samples", static_cast<double>(data.size()));
  rep.add_param("C", C);
  if (data.is_zero()) throw DomainError("sector_log_gradient_check: data is identically zero");
  const SectorIntegrator quad(data);
  double sup_log_g = 0.0;
  for (const auto& g : grid_points(grid)) {
    const auto& p = g.point;
    if (p.arg_positive() > kPi / k) continue;
    const GJet j = quad.eval(p);
    if (!(j.g > 0)) throw NumericalBreakdown("g is not positive", p.x(), p.y());
    const Vec2d lg = j.grad / j.g;
    sup_log_g = std::max(sup_log_g, lg.norm());
    rep.observe((log_factor_gradient(p, k) + lg).norm(), p, g.index);
  }
  rep.add_extra("sup_grad_log_g", sup_log_g);
  rep.add_extra("C2_over_C1", kb.ratio());
  rep.add_extra("C", C);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.finalize();
  if (sup_log_g > kb.ratio()) rep.verdict = Verdict::fail;
  return rep;
}

}  // namespace sharedzero
