#pragma once

#include <complex>
#include <vector>

#include "sharedzero/boundary_data.hpp"
#include "sharedzero/field_core.hpp"
#include "sharedzero/grid.hpp"
#include "sharedzero/report.hpp"

namespace sharedzero {

/// K(z, phi) = 1 / (|e^{ik phi} - z^k|^2 |e^{ik phi} - conj(z)^k|^2) for
/// 0 < r < 1, 0 <= theta <= pi/k, 0 <= phi <= pi/k.
double kernel(const PlanePointd& z, double phi, int k);

/// Analytic gradient of K in z.
Vec2d kernel_gradient(const PlanePointd& z, double phi, int k);

/// g(z) = int_0^{pi/k} K(z, phi) sin(k phi) data(phi) dphi and its gradient.
struct GJet {
  double g{0.0};
  Vec2d grad{Vec2d::Zero()};
  int nodes{0};
};

/// g by composite Gauss-Legendre, panels aligned with the sample intervals,
/// at least 64 nodes, doubled until successive values differ by < 1e-10.
/// Node sets are built on first use and reused across points.
class SectorIntegrator {
 public:
  explicit SectorIntegrator(const SectorBoundaryData& data);

  const SectorBoundaryData& data() const { return data_; }
  GJet eval(const PlanePointd& z) const;
  /// u(z) from the factored representation.
  double poisson(const PlanePointd& z) const;

 private:
  struct Level {
    std::vector<double> a;  // weight * sin(k phi) * data(phi)
    std::vector<std::complex<double>> zeta;
  };
  const Level& level(int l) const;
  GJet level_eval(int l, std::complex<double> w, std::complex<double> dw) const;

  SectorBoundaryData data_;
  int m0_;
  mutable std::vector<Level> levels_;
};

GJet g_eval(const SectorBoundaryData& data, const PlanePointd& z);

/// u(z) = (2k/pi) r^k (1 - r^{2k}) sin(k theta) g(z). Throws DomainError
/// outside the closed sector or for r >= 1.
double poisson_eval(const SectorBoundaryData& data, const PlanePointd& z);

/// Gradient of log(u / (r^k sin k theta)) = log(2k/pi) + log(1 - r^{2k}) + log g.
Vec2d log_quotient_gradient(const SectorBoundaryData& data, const PlanePointd& z);

/// Per-point weights W_j(z) with g(z) = sum_j data_j W_j(z) for data of a
/// fixed length; lets many data vectors share one quadrature.
class PoissonWeights {
 public:
  PoissonWeights(int k, int samples, std::vector<PlanePointd> points);

  int k() const { return k_; }
  int samples() const { return samples_; }
  const std::vector<PlanePointd>& points() const { return points_; }

  /// g and grad g at point i for the given samples.
  GJet at(size_t i, const std::vector<double>& data) const;

 private:
  int k_;
  int samples_;
  std::vector<PlanePointd> points_;
  // Row-major (point, sample) blocks of weights for g, g_x, g_y.
  std::vector<double> w_, wx_, wy_;
};

struct KernelBounds {
  int k{1};
  double r_max{0.5};
  int resolution{0};
  double C1{0.0};  // min K
  double C2{0.0};  // max |grad_z K|

  double ratio() const { return C2 / C1; }
};

/// Sweep of K and |grad K| over {r <= r_max} x {0 <= theta <= pi/k} x
/// {0 <= phi <= pi/k} on nested grids with `resolution` intervals per axis
/// (end points included), so C1 only decreases and C2 only increases under
/// refinement by doubling.
KernelBounds kernel_bounds(int k, double r_max = 0.5, int resolution = 128);

/// sup over r <= r_max of |grad log(1 - r^{2k})|.
double log_factor_gradient_sup(int k, double r_max);

/// C = C2/C1 + sup |grad log(1 - r^{2k})| / k.
double certified_constant(const KernelBounds& kb);

/// sup of |grad log(u / (r^k sin k theta))| over the grid against C k; the
/// intermediate sup |grad log g| (extra "sup_grad_log_g") must stay below
/// C2/C1 as well.
VerificationReport sector_log_gradient_check(const SectorBoundaryData& data, const GridSpec& grid,
                                             const KernelBounds& kb);

}  // namespace sharedzero
