#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sharedzero {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

using Vec2d = Vec2<double>;
using Mat2d = Mat2<double>;

/// Raised when an operation's precondition does not hold (bad parameters,
/// point outside a domain, degenerate frame).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed quantity is NaN or infinite.
class NumericalBreakdown : public std::runtime_error {
 public:
  NumericalBreakdown(const std::string& what, double x, double y)
      : std::runtime_error(what), x_(x), y_(y) {}
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_;
  double y_;
};

/// A point of the plane in both Cartesian and polar form.
/// theta lies in (-pi, pi]; the origin carries theta = 0.
template <typename Scalar>
class PlanePoint {
 public:
  PlanePoint() = default;

  static PlanePoint cartesian(Scalar x, Scalar y) {
    PlanePoint p;
    p.x_ = x;
    p.y_ = y;
    p.r_ = std::hypot(x, y);
    p.theta_ = p.r_ == Scalar(0) ? Scalar(0) : std::atan2(y, x);
    if (p.theta_ == -std::numbers::pi_v<Scalar>) p.theta_ = std::numbers::pi_v<Scalar>;
    return p;
  }

  static PlanePoint cartesian(const Vec2<Scalar>& v) { return cartesian(v.x(), v.y()); }

  static PlanePoint polar(Scalar r, Scalar theta) {
    if (r < Scalar(0)) throw DomainError("PlanePoint: negative radius");
    PlanePoint p;
    p.r_ = r;
    p.theta_ = r == Scalar(0) ? Scalar(0) : wrap_angle(theta);
    p.x_ = r * std::cos(p.theta_);
    p.y_ = r * std::sin(p.theta_);
    return p;
  }

  Scalar x() const { return x_; }
  Scalar y() const { return y_; }
  Scalar r() const { return r_; }
  Scalar theta() const { return theta_; }
  Vec2<Scalar> xy() const { return {x_, y_}; }

  /// Argument measured in [0, 2pi), the natural chart for sectors that open
  /// counter-clockwise from the positive real axis.
  Scalar arg_positive() const {
    return theta_ < Scalar(0) ? theta_ + 2 * std::numbers::pi_v<Scalar> : theta_;
  }

  /// Maps any angle into (-pi, pi].
  static Scalar wrap_angle(Scalar a) {
    const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    a = std::remainder(a, two_pi);
    if (a <= -std::numbers::pi_v<Scalar>) a += two_pi;
    return a;
  }

 private:
  Scalar x_{0}, y_{0}, r_{0}, theta_{0};
};

using PlanePointd = PlanePoint<double>;

enum class Frame { cartesian, polar_orthonormal };

/// Second-order jet of a scalar field. In the polar frame the components are
/// taken against the orthonormal pair {d_r, (1/r) d_theta}.
template <typename Scalar>
struct Jet2 {
  Scalar value{0};
  Vec2<Scalar> grad{Vec2<Scalar>::Zero()};
  // Symmetric Hessian stored as (xx, xy, yy) in the jet's frame.
  Eigen::Matrix<Scalar, 3, 1> hess{Eigen::Matrix<Scalar, 3, 1>::Zero()};
  Frame frame{Frame::cartesian};

  Mat2<Scalar> hessian() const {
    Mat2<Scalar> h;
    h << hess[0], hess[1], hess[1], hess[2];
    return h;
  }

  void set_hessian(const Mat2<Scalar>& h) {
    hess << h(0, 0), Scalar(0.5) * (h(0, 1) + h(1, 0)), h(1, 1);
  }

  Scalar laplacian() const { return hess[0] + hess[2]; }

  /// Frobenius norm squared of the Hessian.
  Scalar hessian_norm2() const {
    return hess[0] * hess[0] + 2 * hess[1] * hess[1] + hess[2] * hess[2];
  }

  Scalar hessian_form(const Vec2<Scalar>& a, const Vec2<Scalar>& b) const {
    return a.dot(hessian() * b);
  }

  Jet2 scaled(Scalar c) const {
    Jet2 j = *this;
    j.value *= c;
    j.grad *= c;
    j.hess *= c;
    return j;
  }
};

using Jet2d = Jet2<double>;

/// Line a*x + b*y = 0 with a^2 + b^2 = 1.
template <typename Scalar>
class LinearForm {
 public:
  LinearForm(Scalar a, Scalar b) {
    const Scalar n = std::hypot(a, b);
    if (!(n > Scalar(0))) throw DomainError("LinearForm: zero coefficients");
    a_ = a / n;
    b_ = b / n;
  }

  Scalar a() const { return a_; }
  Scalar b() const { return b_; }
  Scalar operator()(Scalar x, Scalar y) const { return a_ * x + b_ * y; }
  Scalar operator()(const Vec2<Scalar>& p) const { return a_ * p.x() + b_ * p.y(); }
  Vec2<Scalar> normal() const { return {a_, b_}; }

 private:
  Scalar a_;
  Scalar b_;
};

using LinearFormd = LinearForm<double>;

// ---------------------------------------------------------------------------
// Frame transforms

/// Columns are e_r and e_theta at p.
template <typename Scalar>
Mat2<Scalar> polar_frame_matrix(const PlanePoint<Scalar>& p) {
  const Scalar c = std::cos(p.theta()), s = std::sin(p.theta());
  Mat2<Scalar> m;
  m << c, -s, s, c;
  return m;
}

/// Builds the orthonormal polar jet from coordinate partials
/// (f_r, f_theta, f_rr, f_rtheta, f_thetatheta). The covariant Hessian picks up
/// the connection terms nabla_{d_r} d_theta = d_theta / r and
/// nabla_{d_theta} d_theta = -r d_r before the frame is normalised.
template <typename Scalar>
Jet2<Scalar> polar_jet_from_partials(Scalar value, Scalar f_r, Scalar f_t, Scalar f_rr,
                                     Scalar f_rt, Scalar f_tt, const PlanePoint<Scalar>& p) {
  if (!(p.r() > Scalar(0))) throw DomainError("polar frame is degenerate at the origin");
  const Scalar r = p.r();
  const Scalar hess_rr = f_rr;
  const Scalar hess_rt = f_rt - f_t / r;
  const Scalar hess_tt = f_tt + r * f_r;
  Jet2<Scalar> j;
  j.frame = Frame::polar_orthonormal;
  j.value = value;
  j.grad << f_r, f_t / r;
  j.hess << hess_rr, hess_rt / r, hess_tt / (r * r);
  return j;
}

template <typename Scalar>
Jet2<Scalar> jet_polar_to_cartesian(const Jet2<Scalar>& j, const PlanePoint<Scalar>& p) {
  if (j.frame != Frame::polar_orthonormal) throw DomainError("jet is not in the polar frame");
  if (!(p.r() > Scalar(0))) throw DomainError("polar frame is degenerate at the origin");
  const Mat2<Scalar> m = polar_frame_matrix(p);
  Jet2<Scalar> out;
  out.frame = Frame::cartesian;
  out.value = j.value;
  out.grad = m * j.grad;
  out.set_hessian(m * j.hessian() * m.transpose());
  return out;
}

template <typename Scalar>
Jet2<Scalar> jet_cartesian_to_polar(const Jet2<Scalar>& j, const PlanePoint<Scalar>& p) {
  if (j.frame != Frame::cartesian) throw DomainError("jet is not in the cartesian frame");
  if (!(p.r() > Scalar(0))) throw DomainError("polar frame is degenerate at the origin");
  const Mat2<Scalar> m = polar_frame_matrix(p);
  Jet2<Scalar> out;
  out.frame = Frame::polar_orthonormal;
  out.value = j.value;
  out.grad = m.transpose() * j.grad;
  out.set_hessian(m.transpose() * j.hessian() * m);
  return out;
}

/// Jet of z -> s * f(M z) given the jet of f at M z.
template <typename Scalar>
Jet2<Scalar> pullback(const Jet2<Scalar>& j, const Mat2<Scalar>& m, Scalar sign) {
  Jet2<Scalar> out;
  out.value = sign * j.value;
  out.grad = sign * (m.transpose() * j.grad);
  out.set_hessian(sign * (m.transpose() * j.hessian() * m));
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle

/// Scalar field sampler. Points outside the field's domain evaluate to NaN.
using Sampler = std::function<double(double x, double y)>;

/// Central second-order differences on the 9-point stencil; each entry has
/// truncation error O(step^2).
inline Jet2d fd_jet(const Sampler& f, const PlanePointd& p, double step) {
  if (!(step > 0)) throw DomainError("fd_jet: step must be positive");
  const double x = p.x(), y = p.y(), h = step;
  double s[3][3];
  for (int i = -1; i <= 1; ++i)
    for (int k = -1; k <= 1; ++k) {
      s[i + 1][k + 1] = f(x + i * h, y + k * h);
      if (!std::isfinite(s[i + 1][k + 1]))
        throw DomainError("fd_jet: stencil leaves the field's domain");
    }
  Jet2d j;
  j.value = s[1][1];
  j.grad << (s[2][1] - s[0][1]) / (2 * h), (s[1][2] - s[1][0]) / (2 * h);
  j.hess << (s[2][1] - 2 * s[1][1] + s[0][1]) / (h * h),
      (s[2][2] - s[2][0] - s[0][2] + s[0][0]) / (4 * h * h),
      (s[1][2] - 2 * s[1][1] + s[1][0]) / (h * h);
  return j;
}

/// One Richardson step on top of fd_jet: (4 J(h/2) - J(h)) / 3.
inline Jet2d fd_jet_richardson(const Sampler& f, const PlanePointd& p, double step) {
  const Jet2d coarse = fd_jet(f, p, step);
  const Jet2d fine = fd_jet(f, p, step / 2);
  Jet2d j;
  j.value = fine.value;
  j.grad = (4 * fine.grad - coarse.grad) / 3;
  j.hess = (4 * fine.hess - coarse.hess) / 3;
  return j;
}

/// Largest absolute entry-wise difference of two jets in the same frame.
template <typename Scalar>
Scalar jet_distance(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return std::max({std::abs(a.value - b.value), (a.grad - b.grad).cwiseAbs().maxCoeff(),
                   (a.hess - b.hess).cwiseAbs().maxCoeff()});
}

}  // namespace sharedzero
