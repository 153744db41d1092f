#pragma once

#include <vector>

#include "sharedzero/field_core.hpp"
#include "sharedzero/report.hpp"

namespace sharedzero {

/// Im z^a on the sector {0 < arg z < 2 pi / t}, with the argument taken in
/// [0, 2pi) so no branch cut meets the sector. NaN outside the closed sector.
double sector_im_power(double a, double t, double x, double y);
Jet2d sector_im_power_jet(double a, double t, const PlanePointd& p);

/// u = Im z^{t/2} + eps Im z^t and v = Im z^{t/2} on S = {0 < arg z < 2pi/t}.
struct KenigPair {
  double t{2.0};
  double eps{0.1};
  double threshold{0.0};  // u > 0 on S within B_2 for 0 < eps < threshold

  double opening() const;
  double u(double x, double y) const;
  double v(double x, double y) const;
  Jet2d u_jet(const PlanePointd& p) const;
  Jet2d v_jet(const PlanePointd& p) const;
  /// grad log(u/v).
  Vec2d log_quotient_gradient(const PlanePointd& p) const;
};

/// inf over a 1-D angular sweep at r = 2 of v / (-Im z^t) where Im z^t < 0.
double kenig_positivity_threshold(double t, int samples = 20000);

/// Throws DomainError for t <= 1, eps <= 0 or eps >= the positivity threshold.
KenigPair kenig_pair(double t, double eps);

/// Least-squares fit of log y against log r.
struct SlopeFit {
  double slope{0.0};
  double intercept{0.0};
  double max_residual{0.0};
  std::vector<double> radii;
  std::vector<double> values;
};

SlopeFit fit_log_log(const std::vector<double>& radii, const std::vector<double>& values);

/// `count` geometric radii from r_lo to r_hi.
std::vector<double> geometric_radii(double r_lo, double r_hi, int count);

/// Slope of log |grad log(u/v)|(r e^{i theta_probe}) against log r; the probe
/// ray defaults to the middle of the sector. Needs >= 8 radii in (1e-6, 0.5).
SlopeFit blowup_exponent(const KenigPair& pair, const std::vector<double>& radii,
                         double theta_probe = -1.0);

/// Green function of S with pole at p, via w = z^{t/2} and the half-plane
/// Green function (1/2pi) log|(w - conj(w_p)) / (w - w_p)|.
double sector_green(double t, const PlanePointd& p, const PlanePointd& z);
Vec2d sector_green_gradient(double t, const PlanePointd& p, const PlanePointd& z);

/// Default pole: |p| = 3 on the ray at 0.3 of the opening. On the bisector
/// the second Taylor coefficient of the Green function vanishes and the
/// quotient would decay one order faster.
PlanePointd default_green_pole(double t);

/// Slope below which a measured exponent counts as blow-up.
inline constexpr double kBlowupSlope = -0.025;

/// Measured slope of |grad log(G_p / v)| on the bisector. The report's
/// declared inequality is the one the theory predicts: slope < kBlowupSlope
/// for t < 2 and slope >= kBlowupSlope for t >= 2. The note carries the
/// classification ("blow-up" or "bounded").
VerificationReport green_quotient_regularity(double t, const PlanePointd& p,
                                             const std::vector<double>& radii);

/// Same contract for the Kenig pair, plus the extra "slope_error" against t/2 - 1.
VerificationReport kenig_regularity(const KenigPair& pair, const std::vector<double>& radii);

}  // namespace sharedzero
