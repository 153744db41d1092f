#include "sharedzero/grid.hpp"

#include <cmath>
#include <numbers>

namespace sharedzero {

namespace {
constexpr double kPi = std::numbers::pi;
}

ZeroSetDescriptor ZeroSetDescriptor::star(int k) {
  if (k < 1) throw DomainError("star(k) needs k >= 1");
  return ZeroSetDescriptor(Kind::star, k, {});
}

double ZeroSetDescriptor::indicator(double x, double y) const {
  switch (kind_) {
    case Kind::empty:
      return 1.0;
    case Kind::axis:
      return y;
    case Kind::star: {
      const auto p = PlanePointd::cartesian(x, y);
      return std::sin(k_ * p.theta());
    }
    case Kind::custom:
      return custom_(x, y);
  }
  return 1.0;
}

double ZeroSetDescriptor::distance(double x, double y) const {
  switch (kind_) {
    case Kind::empty:
      return std::numeric_limits<double>::infinity();
    case Kind::axis:
      return std::abs(y);
    case Kind::star: {
      double best = std::numeric_limits<double>::infinity();
      for (int l = 0; l < k_; ++l) {
        const double a = l * kPi / k_;
        best = std::min(best, std::abs(-x * std::sin(a) + y * std::cos(a)));
      }
      return best;
    }
    case Kind::custom: {
      const double h = 1e-6;
      const double g = custom_(x, y);
      const double gx = (custom_(x + h, y) - custom_(x - h, y)) / (2 * h);
      const double gy = (custom_(x, y + h) - custom_(x, y - h)) / (2 * h);
      const double n = std::hypot(gx, gy);
      if (n == 0.0) return g == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return std::abs(g) / n;
    }
  }
  return std::numeric_limits<double>::infinity();
}

Vec2d ZeroSetDescriptor::normal(double x, double y) const {
  switch (kind_) {
    case Kind::empty:
      throw DomainError("empty zero set has no normal");
    case Kind::axis:
      return {0.0, 1.0};
    case Kind::star: {
      double best = std::numeric_limits<double>::infinity();
      Vec2d n(0.0, 1.0);
      for (int l = 0; l < k_; ++l) {
        const double a = l * kPi / k_;
        const double d = std::abs(-x * std::sin(a) + y * std::cos(a));
        if (d < best) {
          best = d;
          n << -std::sin(a), std::cos(a);
        }
      }
      return n;
    }
    case Kind::custom: {
      const double h = 1e-6;
      Vec2d g((custom_(x + h, y) - custom_(x - h, y)) / (2 * h),
              (custom_(x, y + h) - custom_(x, y - h)) / (2 * h));
      if (g.norm() == 0.0) throw DomainError("custom zero curve is singular here");
      return g.normalized();
    }
  }
  return {0.0, 1.0};
}

bool ZeroSetDescriptor::equivalent(const ZeroSetDescriptor& other) const {
  auto canon = [](const ZeroSetDescriptor& z) {
    if (z.kind_ == Kind::axis) return std::pair{Kind::star, 1};
    return std::pair{z.kind_, z.k_};
  };
  if (kind_ == Kind::custom || other.kind_ == Kind::custom) return false;
  return canon(*this) == canon(other);
}

void GridSpec::validate() const {
  if (n_radial < 2 || n_angular < 2) throw DomainError("grid resolution must be >= 2 per axis");
  if (!(radius > 0)) throw DomainError("grid radius must be positive");
  if (!(exclusion_band >= 0)) throw DomainError("exclusion band must be >= 0");
  if (region == Region::annulus && !(r_in > 0 && r_in < radius))
    throw DomainError("annulus needs 0 < r_in < r_out");
  if (region == Region::sector && !(opening > 0 && opening <= 2 * kPi))
    throw DomainError("sector opening must lie in (0, 2pi]");
}

std::vector<GridPoint> grid_points(const GridSpec& spec, const ZeroSetDescriptor& zeros) {
  spec.validate();
  const double r0 = spec.region == GridSpec::Region::annulus ? spec.r_in : 0.0;
  const double dr = (spec.radius - r0) / spec.n_radial;
  double theta0 = -kPi;
  double span = 2 * kPi;
  if (spec.region == GridSpec::Region::sector) {
    theta0 = 0.0;
    span = spec.opening;
  }
  const double dt = span / spec.n_angular;

  std::vector<GridPoint> out;
  out.reserve(static_cast<size_t>(spec.n_radial) * spec.n_angular);
  long index = 0;
  for (int i = 0; i < spec.n_radial; ++i) {
    const double r = r0 + (i + 0.5) * dr;
    for (int j = 0; j < spec.n_angular; ++j) {
      const double t = theta0 + (j + 0.5) * dt;
      GridPoint g;
      g.point = PlanePointd::polar(r, t);
      g.flagged = spec.exclusion_band > 0 &&
                  zeros.distance(g.point.x(), g.point.y()) < spec.exclusion_band;
      g.index = index++;
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace sharedzero
