#pragma once

#include <cstdint>

#include "sharedzero/grid.hpp"
#include "sharedzero/harmonic_library.hpp"
#include "sharedzero/report.hpp"

namespace sharedzero {

/// Radius of the disk around 0 skipped by pointwise checks when v = v_k.
inline constexpr double kOriginExclusion = 1e-3;
/// Distance to Z below which h is evaluated by the on-Z limit protocol.
inline constexpr double kAnalyticBand = 1e-6;

/// A pair u, v of harmonic fields with the same zero set; h = log|u/v|.
class QuotientField {
 public:
  /// Checks membership of the pair on a reference lattice over B_1.9 and
  /// throws DomainError if the zero sets differ.
  QuotientField(HarmonicField u, HarmonicField v);

  /// Skips the membership check (for callers that already ran it).
  static QuotientField unchecked(HarmonicField u, HarmonicField v);

  const HarmonicField& u() const { return u_; }
  const HarmonicField& v() const { return v_; }
  const ZeroSetDescriptor& zeros() const { return v_.zero_set(); }
  double domain_radius() const { return std::min(u_.domain_radius(), v_.domain_radius()); }
  std::string describe() const { return u_.describe() + " / " + v_.describe(); }

 private:
  struct NoCheck {};
  QuotientField(HarmonicField u, HarmonicField v, NoCheck);
  HarmonicField u_;
  HarmonicField v_;
};

/// Jet of h = log|u/v|. Off Z it comes from the analytic jets of u and v.
/// Within kAnalyticBand of Z the value is log|d_n u| - log|d_n v| and the
/// derivatives are extrapolated from off-band analytic jets on both sides of
/// the curve. Throws DomainError at the multiple point of a star and when
/// the normal derivative of v is below 1e-12.
Jet2d h_jet(const QuotientField& q, const PlanePointd& p);

/// F = |grad h|^2 as a sampler (NaN outside the domain).
Sampler gradient_energy(const QuotientField& q);

/// v lap(h) + 2 <grad v, grad h> + v |grad h|^2.
double pde_residual(const QuotientField& q, const PlanePointd& p);

/// v^2 lap(F) minus the right-hand side of the identity for v^2 lap(F),
/// with grad F and lap F from central differences of F at the given step.
/// Throws DomainError when the stencil reaches Z.
double deltaF_residual(const QuotientField& q, const PlanePointd& p, double step);

/// Q_k(X) = (X v_k)^2 - v_k Hess(v_k)(X, X), X in the orthonormal polar frame.
double qform_eval(int k, const PlanePointd& p, const Vec2d& x);

/// Q_k(X) - (1/k)(X v_k)^2 - k(k-1) r^{2k} dtheta(X)^2; identically zero.
double qform_decomposition_residual(int k, const PlanePointd& p, const Vec2d& x);

struct BochnerSample {
  PlanePointd point;
  double F{0.0};
  double lhs{0.0};
  double rhs{0.0};
  double slack{0.0};
  double v{0.0};
};

/// lhs = v^2 lap F + 2v <grad F, grad v> + 2 v^2 <grad F, grad h>,
/// rhs = v^2 F^2 / (k+1). Requires v = v_k.
BochnerSample bochner_slack(int k, const QuotientField& q, const PlanePointd& p, double step);

/// Limit of <grad F, grad v_k> / v_k at a point p != 0 of a star ray,
/// extrapolated from both sides of the ray. Throws DomainError if p is not on
/// Z_k or the two one-sided limits disagree by more than 1e-4 relative.
double pairing_ratio(const Sampler& F, int k, const PlanePointd& p);

/// q(p) with f = q * l, via a 64-node Gauss-Legendre rule for
/// q = int_0^1 (d_n f)(tau s, t) dtau in coordinates (s, t) = (l, along l).
/// Throws DomainError if f does not vanish on the line to 1e-10.
double divide_by_linear(const Sampler& f, const LinearFormd& l, const PlanePointd& p);

// ---------------------------------------------------------------------------
// Cutoff

/// chi(s) = B(2-s) / (B(2-s) + B(s-1)), B(t) = exp(-1/t) for t > 0; and the
/// smallest A (plus 5%) with chi' >= -A, lap(phi) >= -A and
/// |grad phi|^2 <= A phi on the sweep, where phi(x, y) = chi(x^2 + y^2).
struct CutoffSpec {
  double A{0.0};
  int samples{0};
  double raw_A{0.0};  // before the 5% margin

  static double chi(double s);
  static double dchi(double s);
  static double d2chi(double s);

  double phi(double x, double y) const { return chi(x * x + y * y); }
  Vec2d grad_phi(double x, double y) const { return 2 * dchi(x * x + y * y) * Vec2d(x, y); }
  double laplacian_phi(double x, double y) const {
    const double s = x * x + y * y;
    return 4 * dchi(s) + 4 * s * d2chi(s);
  }
};

CutoffSpec cutoff_build(int samples = 100000);

// ---------------------------------------------------------------------------
// Sweeps

/// max |pde_residual| over unflagged grid points (origin disk excluded when Z
/// is a star). bound = tol.
VerificationReport pde_residual_sweep(const QuotientField& q, const GridSpec& grid, double tol);

/// max |deltaF_residual| with band max(grid band, 10*step). bound = tol.
VerificationReport deltaF_sweep(const QuotientField& q, const GridSpec& grid, double step,
                                double tol);

/// Tolerance for the Bochner slack at a given FD step.
double bochner_tolerance(double step);

/// min slack over the grid; bound = -bochner_tolerance(step).
VerificationReport bochner_sweep(int k, const QuotientField& q, const GridSpec& grid,
                                 double step);

/// max |qform_decomposition_residual| over `count` random (p, X) with
/// r in [r_min, r_max] and |X| <= 1. bound = tol.
VerificationReport qform_sweep(int k, long count, std::uint64_t seed, double r_min, double r_max,
                               double tol);

/// sup over the grid of (phi F)^{1/2} against 4(k+1) sqrt(A); extras carry
/// sup_{B_1} |grad h|.
VerificationReport gradient_bound_certificate(int k, const QuotientField& q,
                                              const CutoffSpec& cutoff, const GridSpec& grid);

}  // namespace sharedzero
