#include "sharedzero/harmonic_library.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sharedzero/quadrature.hpp"

namespace sharedzero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Jet2d nan_jet() {
  Jet2d j;
  j.value = kNaN;
  j.grad.setConstant(kNaN);
  j.hess.setConstant(kNaN);
  return j;
}

/// z^n from polar form; avoids the complex pow branch logic for integers.
Complex ipow(double r, double theta, int n) {
  if (n == 0) return 1.0;
  return std::polar(std::pow(r, n), n * theta);
}

/// Argument in [0, 2pi).
double arg_positive(double x, double y) {
  double t = std::atan2(y, x);
  if (t < 0) t += 2 * kPi;
  return t;
}

HarmonicField holomorphic_field(Family family,
                                std::vector<std::pair<std::string, std::string>> params,
                                double radius, ZeroSetDescriptor zeros, bool imaginary,
                                std::function<HoloJet(Complex)> g) {
  auto value = [g, imaginary, radius](double x, double y) {
    if (!(std::hypot(x, y) < radius)) return kNaN;
    const Complex v = g(Complex(x, y)).g;
    return imaginary ? v.imag() : v.real();
  };
  auto jet = [g, imaginary, radius](double x, double y) {
    if (!(std::hypot(x, y) < radius)) return nan_jet();
    const HoloJet h = g(Complex(x, y));
    return imaginary ? im_part_jet(h) : re_part_jet(h);
  };
  return HarmonicField(family, std::move(params), radius, std::move(zeros), value, jet);
}

/// Samples |value| of a complex function over a polar grid on the closed
/// disk of the given radius and returns the extremes.
template <typename F>
std::pair<double, double> sample_modulus(F&& f, double radius) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  auto visit = [&](Complex z) {
    const double m = std::abs(f(z));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  };
  visit(0.0);
  const int nr = 48, nt = 192;
  for (int i = 1; i <= nr; ++i)
    for (int j = 0; j < nt; ++j) visit(std::polar(radius * i / nr, 2 * kPi * j / nt));
  return {lo, hi};
}

// Poisson extension of sector data, written as Re Phi(w) with w = (z/R)^k and
// Phi(w) = w * Psi(w), Psi(w) = -(2ik/pi) sum a_n / (1 - 2 w c_n + w^2).
// Factoring out w keeps relative accuracy near the origin.
class SectorPoissonHolo {
 public:
  SectorPoissonHolo(const SectorBoundaryData& data, double radius)
      : k_(data.k()), radius_(radius) {
    const int panels = data.size() - 1;
    int m = std::max(2, (64 + panels - 1) / panels);
    build(data, m);
    // Fix the node count once so the field is a smooth function of z.
    const double probe_r = 0.95 * radius;
    std::vector<Complex> probes;
    for (double f : {0.1, 0.5, 0.9}) probes.push_back(std::polar(probe_r, f * kPi / k_));
    std::vector<double> prev;
    for (auto z : probes) prev.push_back(value(z));
    while (m < 256) {
      SectorPoissonHolo finer(*this);
      finer.build(data, 2 * m);
      double diff = 0.0, scale = 0.0;
      std::vector<double> next;
      for (size_t i = 0; i < probes.size(); ++i) {
        next.push_back(finer.value(probes[i]));
        diff = std::max(diff, std::abs(next[i] - prev[i]));
        scale = std::max(scale, std::abs(next[i]));
      }
      *this = finer;
      m *= 2;
      if (diff <= 1e-13 * std::max(scale, 1e-300)) break;
      prev = next;
    }
  }

  int k() const { return k_; }
  int nodes() const { return static_cast<int>(a_.size()); }

  double value(Complex z) const {
    const double r = std::abs(z);
    const Complex w = ipow(r / radius_, std::arg(z), k_);
    return (w * psi(w).g).real();
  }

  HoloJet jet(Complex z) const {
    const double r = std::abs(z), t = std::arg(z);
    const Complex w = ipow(r / radius_, t, k_);
    const HoloJet p = psi(w);
    const Complex phi = w * p.g;
    const Complex phi1 = p.g + w * p.g1;
    const Complex phi2 = 2.0 * p.g1 + w * p.g2;
    const double rk = std::pow(radius_, k_);
    const Complex dw = double(k_) * ipow(r, t, k_ - 1) / rk;
    Complex d2w = 0.0;
    if (k_ >= 2) d2w = double(k_) * (k_ - 1) * ipow(r, t, k_ - 2) / rk;
    return {phi, phi1 * dw, phi2 * dw * dw + phi1 * d2w};
  }

 private:
  void build(const SectorBoundaryData& data, int m) {
    const CompositeRule rule = composite_gauss_legendre(0.0, data.opening(), data.size() - 1, m);
    a_.resize(rule.nodes.size());
    c_.resize(rule.nodes.size());
    for (size_t n = 0; n < rule.nodes.size(); ++n) {
      const double phi = rule.nodes[n];
      a_[n] = rule.weights[n] * std::sin(k_ * phi) * data(phi);
      c_[n] = std::cos(k_ * phi);
    }
  }

  HoloJet psi(Complex w) const {
    Complex s0 = 0.0, s1 = 0.0, s2 = 0.0;
    const Complex w2 = w * w;
    for (size_t n = 0; n < a_.size(); ++n) {
      const Complex dm = w - c_[n];
      const Complex den = 1.0 - 2.0 * w * c_[n] + w2;
      const Complex inv = 1.0 / den;
      s0 += a_[n] * inv;
      s1 += a_[n] * (-2.0 * dm * inv * inv);
      s2 += a_[n] * (-2.0 * inv * inv + 8.0 * dm * dm * inv * inv * inv);
    }
    const Complex pre(0.0, -2.0 * k_ / kPi);
    return {pre * s0, pre * s1, pre * s2};
  }

  int k_;
  double radius_;
  std::vector<double> a_, c_;
};

// Poisson extension of circle data: Re Phi(z/R), Phi(w) = (1/2pi) sum a_n (zeta+w)/(zeta-w).
class DiskPoissonHolo {
 public:
  DiskPoissonHolo(const DiskBoundaryData& data, double radius) : radius_(radius) {
    int m = std::max(2, (64 + data.size() - 1) / data.size());
    build(data, m);
    const Complex probes[] = {std::polar(0.95 * radius, 0.3), std::polar(0.95 * radius, 2.0),
                              std::polar(0.95 * radius, 4.4)};
    while (m < 256) {
      DiskPoissonHolo finer(*this);
      finer.build(data, 2 * m);
      double diff = 0.0, scale = 0.0;
      for (auto z : probes) {
        const double a = value(z), b = finer.value(z);
        diff = std::max(diff, std::abs(a - b));
        scale = std::max(scale, std::abs(b));
      }
      *this = finer;
      m *= 2;
      if (diff <= 1e-13 * std::max(scale, 1e-300)) break;
    }
  }

  double value(Complex z) const { return phi(z / radius_).g.real(); }

  HoloJet jet(Complex z) const {
    const HoloJet p = phi(z / radius_);
    return {p.g, p.g1 / radius_, p.g2 / (radius_ * radius_)};
  }

 private:
  void build(const DiskBoundaryData& data, int m) {
    const CompositeRule rule = composite_gauss_legendre(0.0, 2 * kPi, data.size(), m);
    a_.resize(rule.nodes.size());
    zeta_.resize(rule.nodes.size());
    for (size_t n = 0; n < rule.nodes.size(); ++n) {
      a_[n] = rule.weights[n] * data(rule.nodes[n]) / (2 * kPi);
      zeta_[n] = std::polar(1.0, rule.nodes[n]);
    }
  }

  HoloJet phi(Complex w) const {
    Complex s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (size_t n = 0; n < a_.size(); ++n) {
      const Complex inv = 1.0 / (zeta_[n] - w);
      s0 += a_[n] * (zeta_[n] + w) * inv;
      s1 += a_[n] * 2.0 * zeta_[n] * inv * inv;
      s2 += a_[n] * 4.0 * zeta_[n] * inv * inv * inv;
    }
    return {s0, s1, s2};
  }

  double radius_;
  std::vector<double> a_;
  std::vector<Complex> zeta_;
};

std::string real_str(double v) { return format_real(v); }

}  // namespace

// ---------------------------------------------------------------------------

std::string family_name(Family f) {
  switch (f) {
    case Family::normal_form: return "normal_form";
    case Family::weiss: return "weiss";
    case Family::positive_exp: return "positive_exp";
    case Family::im_exp_of: return "im_exp_of";
    case Family::shifted_power: return "shifted_power";
    case Family::moebius_of: return "moebius_of";
    case Family::sector_reflected: return "sector_reflected";
    case Family::sector_restricted: return "sector_restricted";
    case Family::fefferman: return "fefferman";
    case Family::poisson_disk: return "poisson_disk";
  }
  return "unknown";
}

PowerSeries::PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

HoloJet PowerSeries::operator()(Complex z) const {
  // Horner for value and both derivatives.
  Complex p = 0.0, d1 = 0.0, d2 = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + p;
    p = p * z + *it;
  }
  return {p, d1, d2};
}

bool PowerSeries::real_monomial(int& k, double& c) const {
  int found = -1;
  for (size_t n = 0; n < coeffs_.size(); ++n) {
    if (coeffs_[n] == Complex(0.0)) continue;
    if (found >= 0 || coeffs_[n].imag() != 0.0) return false;
    found = static_cast<int>(n);
  }
  if (found < 1) return false;
  k = found;
  c = coeffs_[found].real();
  return true;
}

std::string PowerSeries::describe() const {
  std::ostringstream os;
  for (size_t n = 0; n < coeffs_.size(); ++n)
    os << (n ? "," : "") << real_str(coeffs_[n].real()) << ':' << real_str(coeffs_[n].imag());
  return os.str();
}

Jet2d im_part_jet(const HoloJet& h) {
  Jet2d j;
  j.value = h.g.imag();
  j.grad << h.g1.imag(), h.g1.real();
  j.hess << h.g2.imag(), h.g2.real(), -h.g2.imag();
  return j;
}

Jet2d re_part_jet(const HoloJet& h) {
  Jet2d j;
  j.value = h.g.real();
  j.grad << h.g1.real(), -h.g1.imag();
  j.hess << h.g2.real(), -h.g2.imag(), -h.g2.real();
  return j;
}

HarmonicField::HarmonicField(Family family,
                             std::vector<std::pair<std::string, std::string>> params,
                             double domain_radius, ZeroSetDescriptor zeros, ValueFn value,
                             JetFn jet)
    : family_(family),
      params_(std::move(params)),
      domain_radius_(domain_radius),
      zeros_(std::move(zeros)),
      value_(std::make_shared<const ValueFn>(std::move(value))),
      jet_(std::make_shared<const JetFn>(std::move(jet))) {}

std::string HarmonicField::describe() const {
  std::string s = family_name(family_) + "(";
  for (size_t i = 0; i < params_.size(); ++i)
    s += (i ? ", " : "") + params_[i].first + "=" + params_[i].second;
  return s + ")";
}

double HarmonicField::operator()(double x, double y) const { return (*value_)(x, y); }

Jet2d HarmonicField::jet(const PlanePointd& p) const { return (*jet_)(p.x(), p.y()); }

Sampler HarmonicField::sampler() const {
  auto fn = value_;
  return [fn](double x, double y) { return (*fn)(x, y); };
}

HarmonicField HarmonicField::scaled(double c) const {
  if (c == 0.0) throw DomainError("scaling by zero destroys the zero set");
  auto value = value_;
  auto jet = jet_;
  auto params = params_;
  params.emplace_back("scale", real_str(c));
  return HarmonicField(
      family_, std::move(params), domain_radius_, zeros_,
      [value, c](double x, double y) { return c * (*value)(x, y); },
      [jet, c](double x, double y) { return (*jet)(x, y).scaled(c); });
}

// ---------------------------------------------------------------------------

HarmonicField normal_form(int k) {
  if (k < 1) throw DomainError("normal_form: k must be >= 1");
  auto value = [k](double x, double y) {
    if (!(std::hypot(x, y) < 2.0)) return kNaN;
    const auto p = PlanePointd::cartesian(x, y);
    return std::pow(p.r(), k) * std::sin(k * p.theta());
  };
  auto jet = [k](double x, double y) {
    if (!(std::hypot(x, y) < 2.0)) return nan_jet();
    const auto p = PlanePointd::cartesian(x, y);
    if (p.r() == 0.0) {
      // Jet of z^k at the origin.
      return im_part_jet({0.0, k == 1 ? Complex(1.0) : Complex(0.0),
                          k == 2 ? Complex(2.0) : Complex(0.0)});
    }
    return jet_polar_to_cartesian(normal_form_polar_jet(k, p), p);
  };
  return HarmonicField(Family::normal_form, {{"k", std::to_string(k)}}, 2.0,
                       ZeroSetDescriptor::star(k), value, jet);
}

HarmonicField weiss(double alpha) {
  if (!(std::abs(alpha) <= kPi / 2) || alpha == 0.0)
    throw DomainError("weiss: alpha must lie in [-pi/2, pi/2] and be nonzero");
  const double sign = alpha > 0 ? 1.0 : -1.0;
  auto g = [alpha, sign](Complex z) {
    const Complex e = std::exp(alpha * z);
    return HoloJet{sign * e, sign * alpha * e, sign * alpha * alpha * e};
  };
  HarmonicField f = holomorphic_field(Family::weiss, {{"alpha", real_str(alpha)}}, 2.0,
                                      ZeroSetDescriptor::axis(), true, g);
  // Direct closed form for the value.
  const double a = std::abs(alpha);
  return HarmonicField(
      Family::weiss, f.params(), 2.0, ZeroSetDescriptor::axis(),
      [alpha, a](double x, double y) {
        if (!(std::hypot(x, y) < 2.0)) return kNaN;
        return std::exp(alpha * x) * std::sin(a * y);
      },
      [f](double x, double y) { return f.jet(PlanePointd::cartesian(x, y)); });
}

HarmonicField positive_exp(double alpha) {
  if (!(std::abs(alpha) < kPi / 4)) throw DomainError("positive_exp: |alpha| must be < pi/4");
  auto g = [alpha](Complex z) {
    const Complex e = std::exp(alpha * z);
    return HoloJet{e, alpha * e, alpha * alpha * e};
  };
  return holomorphic_field(Family::positive_exp, {{"alpha", real_str(alpha)}}, 2.0,
                           ZeroSetDescriptor::empty(), false, g);
}

namespace {
ZeroSetDescriptor zero_set_of_im(const PowerSeries& f) {
  int k = 0;
  double c = 0.0;
  if (f.real_monomial(k, c)) return k == 1 ? ZeroSetDescriptor::axis() : ZeroSetDescriptor::star(k);
  return ZeroSetDescriptor::custom([f](double x, double y) { return f(Complex(x, y)).g.imag(); });
}
}  // namespace

HarmonicField im_exp_of(const PowerSeries& f) {
  const auto [lo, hi] = sample_modulus([&f](Complex z) { return f(z).g; }, 2.0);
  (void)lo;
  if (!(hi < kPi)) throw DomainError("im_exp_of: |F| must stay below pi on B_2");
  auto g = [f](Complex z) {
    const HoloJet h = f(z);
    const Complex e = std::exp(h.g);
    return HoloJet{e, h.g1 * e, (h.g2 + h.g1 * h.g1) * e};
  };
  return holomorphic_field(Family::im_exp_of, {{"F", f.describe()}}, 2.0, zero_set_of_im(f),
                           true, g);
}

HarmonicField shifted_power(double alpha) {
  if (!(std::abs(alpha) <= 1.0) || alpha == 0.0)
    throw DomainError("shifted_power: need 0 < |alpha| <= 1");
  auto g = [alpha](Complex z) {
    const Complex s = z + 2.0;
    const Complex p = std::pow(s, alpha);
    return HoloJet{p, alpha * p / s, alpha * (alpha - 1.0) * p / (s * s)};
  };
  return holomorphic_field(Family::shifted_power, {{"alpha", real_str(alpha)}}, 2.0,
                           ZeroSetDescriptor::axis(), true, g);
}

HarmonicField moebius_of(const PowerSeries& f, double a, double c, double d) {
  if (a * d == 0.0) throw DomainError("moebius_of: need a*d != 0");
  const auto [lo, hi] = sample_modulus([&](Complex z) { return c * f(z).g + d; }, 2.0);
  (void)hi;
  if (!(lo > 1e-8 * std::abs(d))) throw DomainError("moebius_of: pole F = -d/c inside B_2");
  auto g = [f, a, c, d](Complex z) {
    const HoloJet h = f(z);
    const Complex den = c * h.g + d;
    const Complex g0 = a * h.g / den;
    const Complex g1 = a * d * h.g1 / (den * den);
    const Complex g2 = a * d * (h.g2 * den - 2.0 * c * h.g1 * h.g1) / (den * den * den);
    return HoloJet{g0, g1, g2};
  };
  return holomorphic_field(
      Family::moebius_of,
      {{"F", f.describe()}, {"a", real_str(a)}, {"c", real_str(c)}, {"d", real_str(d)}}, 2.0,
      zero_set_of_im(f), true, g);
}

HarmonicField fefferman(double eps) {
  if (!(std::abs(eps) < 0.25)) throw DomainError("fefferman: need |eps| < 1/4");
  // xy = Im z^2 / 2 and x^3 y - x y^3 = Im z^4 / 4.
  auto g = [eps](Complex z) {
    const Complex z2 = z * z;
    return HoloJet{0.5 * z2 + 0.25 * eps * z2 * z2, z + eps * z2 * z, 1.0 + 3.0 * eps * z2};
  };
  HarmonicField f = holomorphic_field(Family::fefferman, {{"epsilon", real_str(eps)}}, 2.0,
                                      ZeroSetDescriptor::star(2), true, g);
  return HarmonicField(
      Family::fefferman, f.params(), 2.0, ZeroSetDescriptor::star(2),
      [eps](double x, double y) {
        if (!(std::hypot(x, y) < 2.0)) return kNaN;
        return x * y + eps * (x * x * x * y - x * y * y * y);
      },
      [f](double x, double y) { return f.jet(PlanePointd::cartesian(x, y)); });
}

HarmonicField poisson_disk(const DiskBoundaryData& data, double radius) {
  if (!(radius > 0)) throw DomainError("poisson_disk: radius must be positive");
  for (double s : data.samples())
    if (!(s >= 0)) throw DomainError("poisson_disk: samples must be nonnegative");
  if (std::all_of(data.samples().begin(), data.samples().end(), [](double s) { return s == 0; }))
    throw DomainError("poisson_disk: samples are identically zero");
  auto holo = std::make_shared<const DiskPoissonHolo>(data, radius);
  return holomorphic_field(
      Family::poisson_disk,
      {{"samples", std::to_string(data.size())}, {"radius", real_str(radius)}}, radius,
      ZeroSetDescriptor::empty(), false, [holo](Complex z) { return holo->jet(z); });
}

HarmonicField sector_poisson_field(const SectorBoundaryData& data, double radius) {
  if (!(radius > 0)) throw DomainError("sector field: radius must be positive");
  if (data.is_zero()) throw DomainError("sector field: boundary data is identically zero");
  const int k = data.k();
  auto holo = std::make_shared<const SectorPoissonHolo>(data, radius);
  const double opening = kPi / k;
  auto inside = [radius, opening](double x, double y) {
    if (!(std::hypot(x, y) < radius)) return false;
    if (x == 0.0 && y == 0.0) return true;
    double t = std::atan2(y, x);
    if (t < -kPi / 2) t += 2 * kPi;
    return t >= -1e-9 && t <= opening + 1e-9;
  };
  return HarmonicField(
      Family::sector_restricted,
      {{"k", std::to_string(k)}, {"samples", std::to_string(data.size())},
       {"radius", real_str(radius)}},
      radius, ZeroSetDescriptor::star(k),
      [holo, inside](double x, double y) {
        return inside(x, y) ? holo->value(Complex(x, y)) : kNaN;
      },
      [holo, inside](double x, double y) {
        return inside(x, y) ? re_part_jet(holo->jet(Complex(x, y))) : nan_jet();
      });
}

HarmonicField sector_reflected(const SectorBoundaryData& data, double radius) {
  HarmonicField f = reflect_extend(sector_poisson_field(data, radius), data.k());
  return f;
}

namespace {

/// Orthogonal map taking z into the closed sector S_k, and the sign of the
/// odd extension there.
std::pair<Mat2d, double> fold_map(double x, double y, int k) {
  const double w = kPi / k;
  int m = static_cast<int>(std::floor(arg_positive(x, y) / w));
  m = std::clamp(m, 0, 2 * k - 1);
  Mat2d map;
  double sign = 1.0;
  if (m % 2 == 0) {
    const double a = -m * w;
    map << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  } else {
    const double a = (m + 1) * w;
    Mat2d rot;
    rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    map = rot * Eigen::DiagonalMatrix<double, 2>(1.0, -1.0);
    sign = -1.0;
  }
  return {map, sign};
}

}  // namespace

Vec2d reflect_across_ray(const Vec2d& z, int k, int l) {
  const double a = 2.0 * l * kPi / k;
  Mat2d m;
  m << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
  return m * z;
}

HarmonicField reflect_extend(const HarmonicField& sector_field, int k) {
  if (k < 1) throw DomainError("reflect_extend: k must be >= 1");
  const double radius = sector_field.domain_radius();
  const double w = kPi / k;
  double scale = 0.0;
  for (int i = 1; i <= 9; ++i)
    for (int j = 1; j <= 9; ++j) {
      const double u = sector_field(std::polar(0.1 * i * radius, 0.1 * j * w).real(),
                                    std::polar(0.1 * i * radius, 0.1 * j * w).imag());
      if (!(u > 0)) throw DomainError("reflect_extend: input is not positive inside S_k");
      scale = std::max(scale, u);
    }
  for (int i = 1; i <= 9; ++i)
    for (double edge : {0.0, w}) {
      const Complex z = std::polar(0.1 * i * radius, edge);
      if (!(std::abs(sector_field(z.real(), z.imag())) <= 1e-8 * scale))
        throw DomainError("reflect_extend: input does not vanish on the edges of S_k");
    }

  auto params = sector_field.params();
  if (std::none_of(params.begin(), params.end(), [](const auto& p) { return p.first == "k"; }))
    params.emplace_back("k", std::to_string(k));
  return HarmonicField(
      Family::sector_reflected, std::move(params), radius, ZeroSetDescriptor::star(k),
      [sector_field, k, radius](double x, double y) {
        if (!(std::hypot(x, y) < radius)) return kNaN;
        const auto [m, s] = fold_map(x, y, k);
        const Vec2d z = m * Vec2d(x, y);
        return s * sector_field(z.x(), z.y());
      },
      [sector_field, k, radius](double x, double y) {
        if (!(std::hypot(x, y) < radius)) return nan_jet();
        const auto [m, s] = fold_map(x, y, k);
        const Vec2d z = m * Vec2d(x, y);
        return pullback(sector_field.jet(PlanePointd::cartesian(z)), m, s);
      });
}

HarmonicField restrict_to_sector(const HarmonicField& field, int k) {
  if (k < 1) throw DomainError("restrict_to_sector: k must be >= 1");
  const double opening = kPi / k;
  auto inside = [opening](double x, double y) {
    if (x == 0.0 && y == 0.0) return true;
    double t = std::atan2(y, x);
    if (t < -kPi / 2) t += 2 * kPi;
    return t >= -1e-9 && t <= opening + 1e-9;
  };
  auto params = field.params();
  return HarmonicField(
      Family::sector_restricted, std::move(params), field.domain_radius(),
      ZeroSetDescriptor::star(k),
      [field, inside](double x, double y) { return inside(x, y) ? field(x, y) : kNaN; },
      [field, inside](double x, double y) {
        return inside(x, y) ? field.jet(PlanePointd::cartesian(x, y)) : nan_jet();
      });
}

HarmonicField example_field(const FieldParams& p) {
  HarmonicField f = [&]() -> HarmonicField {
    const std::string& name = p.family;
    if (name == "normal_form") return normal_form(p.k);
    if (name == "weiss") return weiss(p.alpha);
    if (name == "positive_exp") return positive_exp(p.alpha);
    if (name == "im_exp_of") return im_exp_of(PowerSeries(p.coeffs));
    if (name == "shifted_power") return shifted_power(p.alpha);
    if (name == "moebius_of") return moebius_of(PowerSeries(p.coeffs), p.a, p.c, p.d);
    if (name == "fefferman") return fefferman(p.epsilon);
    if (name == "poisson_disk") return poisson_disk(DiskBoundaryData(p.samples), p.radius);
    if (name == "sector_reflected")
      return sector_reflected(SectorBoundaryData(p.k, p.samples), p.radius);
    throw DomainError("unknown field family '" + name + "'");
  }();
  return p.scale == 1.0 ? f : f.scaled(p.scale);
}

Factorization factor_vk(int k) {
  if (k < 1) throw DomainError("factor_vk: k must be >= 1");
  Factorization out{1.0, {}};
  for (int l = 0; l < k; ++l) {
    const double a = l * kPi / k;
    out.forms.emplace_back(-std::sin(a), std::cos(a));
  }
  // Match v_k = 1 on the bisector theta = pi/(2k) of the first wedge.
  const double t0 = kPi / (2 * k);
  const double x0 = std::cos(t0), y0 = std::sin(t0);
  double prod = 1.0;
  for (const auto& f : out.forms) prod *= f(x0, y0);
  out.leading = 1.0 / prod;
  return out;
}

// ---------------------------------------------------------------------------

SectorBoundaryData::SectorBoundaryData(int k, std::vector<double> samples)
    : k_(k), samples_(std::move(samples)) {
  if (k_ < 1) throw DomainError("sector data: k must be >= 1");
  if (samples_.size() < 16) throw DomainError("sector data: need at least 16 samples");
  for (double s : samples_)
    if (!(s >= 0) || !std::isfinite(s)) throw DomainError("sector data: samples must be >= 0");
}

SectorBoundaryData SectorBoundaryData::from_function(int k, int n,
                                                     const std::function<double(double)>& f) {
  std::vector<double> s(static_cast<size_t>(std::max(n, 0)));
  const double h = kPi / k / (n - 1);
  for (int j = 0; j < n; ++j) s[j] = f(j * h);
  // Clean roundoff at the corners so that sin(k phi)-type data stays >= 0.
  for (double& v : s)
    if (v < 0 && v > -1e-14) v = 0.0;
  return SectorBoundaryData(k, std::move(s));
}

bool SectorBoundaryData::is_zero() const {
  return std::all_of(samples_.begin(), samples_.end(), [](double s) { return s == 0.0; });
}

double SectorBoundaryData::operator()(double phi) const {
  const double h = spacing();
  const double t = std::clamp(phi / h, 0.0, double(size() - 1));
  const int j = std::min(static_cast<int>(t), size() - 2);
  const double f = t - j;
  return (1 - f) * samples_[j] + f * samples_[j + 1];
}

SectorBoundaryData SectorBoundaryData::scaled(double c) const {
  std::vector<double> s = samples_;
  for (double& v : s) v *= c;
  return SectorBoundaryData(k_, std::move(s));
}

DiskBoundaryData::DiskBoundaryData(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 3) throw DomainError("disk data: need at least 3 samples");
  for (double s : samples_)
    if (!std::isfinite(s)) throw DomainError("disk data: samples must be finite");
}

double DiskBoundaryData::operator()(double phi) const {
  const double h = spacing();
  double t = std::fmod(phi / h, double(size()));
  if (t < 0) t += size();
  const int j = std::min(static_cast<int>(t), size() - 1);
  const double f = t - j;
  return (1 - f) * samples_[j] + f * samples_[(j + 1) % size()];
}

}  // namespace sharedzero
