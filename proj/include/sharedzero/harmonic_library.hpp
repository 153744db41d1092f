#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sharedzero/boundary_data.hpp"
#include "sharedzero/field_core.hpp"
#include "sharedzero/grid.hpp"
#include "sharedzero/report.hpp"

namespace sharedzero {

using Complex = std::complex<double>;

enum class Family {
  normal_form,
  weiss,
  positive_exp,
  im_exp_of,
  shifted_power,
  moebius_of,
  sector_reflected,
  sector_restricted,
  fefferman,
  poisson_disk,
};

std::string family_name(Family f);

/// Value and first two complex derivatives of a holomorphic function.
struct HoloJet {
  Complex g, g1, g2;
};

/// Holomorphic function given by a finite power series sum c_n z^n.
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<Complex> coeffs);

  HoloJet operator()(Complex z) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// True (and sets k, c) when the series is c * z^k with real c != 0.
  bool real_monomial(int& k, double& c) const;
  std::string describe() const;

 private:
  std::vector<Complex> coeffs_;
};

/// Cartesian jet of Im G or Re G from the holomorphic jet of G.
Jet2d im_part_jet(const HoloJet& h);
Jet2d re_part_jet(const HoloJet& h);

/// Closed-form harmonic function with a declared zero set. Immutable; cheap
/// to copy. Evaluation outside the field's domain yields NaN.
class HarmonicField {
 public:
  using ValueFn = std::function<double(double, double)>;
  using JetFn = std::function<Jet2d(double, double)>;

  HarmonicField(Family family, std::vector<std::pair<std::string, std::string>> params,
                double domain_radius, ZeroSetDescriptor zeros, ValueFn value, JetFn jet);

  Family family() const { return family_; }
  const std::vector<std::pair<std::string, std::string>>& params() const { return params_; }
  std::string describe() const;
  double domain_radius() const { return domain_radius_; }
  const ZeroSetDescriptor& zero_set() const { return zeros_; }

  bool contains(double x, double y) const { return std::hypot(x, y) < domain_radius_; }

  double operator()(double x, double y) const;
  double value(const PlanePointd& p) const { return (*this)(p.x(), p.y()); }
  /// Analytic cartesian jet.
  Jet2d jet(const PlanePointd& p) const;
  Sampler sampler() const;

  /// c * u. Same zero set for c != 0.
  HarmonicField scaled(double c) const;

 private:
  Family family_;
  std::vector<std::pair<std::string, std::string>> params_;
  double domain_radius_;
  ZeroSetDescriptor zeros_;
  std::shared_ptr<const ValueFn> value_;
  std::shared_ptr<const JetFn> jet_;
};

// ---------------------------------------------------------------------------
// Families

/// v_k = Im z^k = r^k sin(k theta), k >= 1. Zero set star(k).
HarmonicField normal_form(int k);

/// Orthonormal polar jet of v_k from the coordinate derivative table.
template <typename Scalar>
Jet2<Scalar> normal_form_polar_jet_t(int k, const PlanePoint<Scalar>& p) {
  if (k < 1) throw DomainError("normal_form: k must be >= 1");
  const Scalar r = p.r(), t = p.theta();
  const Scalar s = std::sin(k * t), c = std::cos(k * t);
  const Scalar rk = std::pow(r, k), rk1 = std::pow(r, k - 1);
  const Scalar rk2 = k >= 2 ? std::pow(r, k - 2) : Scalar(0);
  const Scalar kk = k;
  return polar_jet_from_partials<Scalar>(rk * s,                   // v
                                         kk * rk1 * s,             // d_r
                                         kk * rk * c,              // d_theta
                                         kk * (kk - 1) * rk2 * s,  // d_rr
                                         kk * kk * rk1 * c,        // d_r d_theta
                                         -kk * kk * rk * s,        // d_theta d_theta
                                         p);
}

inline Jet2d normal_form_polar_jet(int k, const PlanePointd& p) {
  return normal_form_polar_jet_t<double>(k, p);
}

/// e^{alpha x} sin(|alpha| y), alpha in [-pi/2, pi/2] \ {0}. Zero set: axis.
HarmonicField weiss(double alpha);

/// e^{alpha x} cos(alpha y), |alpha| < pi/4; positive on B_2.
HarmonicField positive_exp(double alpha);

/// Im e^F for a power series F with |F| < pi on B_2 (checked by sampling).
HarmonicField im_exp_of(const PowerSeries& f);

/// Im (z + 2)^alpha, principal branch, 0 < |alpha| <= 1. Zero set: axis.
HarmonicField shifted_power(double alpha);

/// Im (a F / (c F + d)) with a*d != 0 and cF + d nonvanishing on B_2.
HarmonicField moebius_of(const PowerSeries& f, double a, double c, double d);

/// xy + eps (x^3 y - x y^3), |eps| < 1/4. Zero set star(2).
HarmonicField fefferman(double eps);

/// Poisson extension to B_R of nonnegative, not identically zero samples
/// on the circle of radius R.
HarmonicField poisson_disk(const DiskBoundaryData& data, double radius = 2.0);

/// Positive harmonic function on the closed sector S_k cut from B_R, with
/// the given data on the arc |z| = R and zero on the straight edges.
/// NaN outside the closed sector.
HarmonicField sector_poisson_field(const SectorBoundaryData& data, double radius = 2.0);

/// reflect_extend(sector_poisson_field(data, radius), k).
HarmonicField sector_reflected(const SectorBoundaryData& data, double radius = 2.0);

/// Odd reflection of a field given on the closed sector S_k across every
/// ray theta = l*pi/k. Throws DomainError if the input is not positive
/// inside S_k or does not vanish on the edges (tolerance 1e-8, relative to
/// the sampled scale).
HarmonicField reflect_extend(const HarmonicField& sector_field, int k);

/// The field restricted to the closed sector S_k (NaN elsewhere).
HarmonicField restrict_to_sector(const HarmonicField& field, int k);

/// Reflection of z across the ray theta = l*pi/k.
Vec2d reflect_across_ray(const Vec2d& z, int k, int l);

/// Parameters naming a family the way the config file does.
struct FieldParams {
  std::string family;
  int k{1};
  double alpha{1.0};
  double epsilon{0.05};
  std::vector<Complex> coeffs{Complex(0.0), Complex(1.0)};
  double a{1.0}, c{0.25}, d{1.0};
  std::vector<double> samples;
  double radius{2.0};
  double scale{1.0};
};

/// Builds any family from named parameters.
HarmonicField example_field(const FieldParams& params);

/// a_k and the k forms l_l = y cos(l pi/k) - x sin(l pi/k) with
/// v_k = a_k * prod l_l.
struct Factorization {
  double leading;
  std::vector<LinearFormd> forms;
};
Factorization factor_vk(int k);

// ---------------------------------------------------------------------------
// Zero-set checks

/// Compares the zero sets of u and v numerically on a Cartesian lattice
/// covering the grid's region (resolution = spec.n_radial per axis):
/// u and v must change sign across exactly the same lattice edges, be small
/// at the same nodes away from the declared zero sets, and u*v must keep
/// one sign on each flood-filled component of the complement.
/// extremal = number of violations, bound = 0.
VerificationReport membership_check(const HarmonicField& u, const HarmonicField& v,
                                    const GridSpec& grid);

/// The declared zero set matches the sign changes of u: u times the
/// descriptor's indicator keeps one sign at every node outside the band.
VerificationReport zero_set_check(const HarmonicField& u, const GridSpec& grid);

}  // namespace sharedzero
