#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "sharedzero/field_core.hpp"

namespace sharedzero {

/// Zero set of a harmonic field inside B_2.
class ZeroSetDescriptor {
 public:
  enum class Kind { empty, star, axis, custom };

  static ZeroSetDescriptor empty() { return ZeroSetDescriptor(Kind::empty, 0, {}); }
  /// The 2k rays theta = l*pi/k, i.e. {Im z^k = 0}.
  static ZeroSetDescriptor star(int k);
  /// The real axis.
  static ZeroSetDescriptor axis() { return ZeroSetDescriptor(Kind::axis, 1, {}); }
  /// Zero curve of a smooth indicator g; g changes sign across the curve.
  static ZeroSetDescriptor custom(std::function<double(double, double)> indicator) {
    return ZeroSetDescriptor(Kind::custom, 0, std::move(indicator));
  }

  Kind kind() const { return kind_; }
  int k() const { return k_; }

  /// Signed function whose sign flips exactly across the zero set
  /// (constant +1 for the empty set).
  double indicator(double x, double y) const;

  /// Distance to the zero set; exact for star/axis, first-order Newton
  /// estimate |g| / |grad g| for custom curves.
  double distance(double x, double y) const;

  /// Unit normal to the nearest zero curve at (x, y).
  Vec2d normal(double x, double y) const;

  /// True when the descriptor singles out the origin as a multiple point.
  bool has_singular_origin() const { return kind_ == Kind::star && k_ >= 2; }

  /// axis and star(1) describe the same set.
  bool equivalent(const ZeroSetDescriptor& other) const;

 private:
  ZeroSetDescriptor(Kind kind, int k, std::function<double(double, double)> g)
      : kind_(kind), k_(k), custom_(std::move(g)) {}

  Kind kind_;
  int k_;
  std::function<double(double, double)> custom_;
};

struct GridSpec {
  enum class Region { disk, annulus, sector };

  Region region{Region::disk};
  double radius{1.0};   // outer radius
  double r_in{0.0};     // annulus only
  double opening{0.0};  // sector only, in (0, 2pi]
  int n_radial{2};
  int n_angular{2};
  double exclusion_band{0.0};

  static GridSpec disk(double radius, int n_r, int n_theta, double band = 0.0) {
    return {Region::disk, radius, 0.0, 0.0, n_r, n_theta, band};
  }
  static GridSpec annulus(double r_in, double r_out, int n_r, int n_theta, double band = 0.0) {
    return {Region::annulus, r_out, r_in, 0.0, n_r, n_theta, band};
  }
  static GridSpec sector(double opening, double radius, int n_r, int n_theta,
                         double band = 0.0) {
    return {Region::sector, radius, 0.0, opening, n_r, n_theta, band};
  }

  void validate() const;
};

struct GridPoint {
  PlanePointd point;
  bool flagged{false};  // within exclusion_band of the zero set
  long index{0};        // enumeration order
};

/// Cell-centred polar enumeration, radius-major. Every point lies strictly
/// inside the region; sector angles lie strictly inside (0, opening).
std::vector<GridPoint> grid_points(const GridSpec& spec,
                                   const ZeroSetDescriptor& zeros = ZeroSetDescriptor::empty());

}  // namespace sharedzero
