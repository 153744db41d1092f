#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "sharedzero/counterexamples.hpp"

using namespace sharedzero;
using sharedzero::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

PlanePointd inside(Gen& gen, double t, double r_lo, double r_hi, double margin = 0.02) {
  const double open = 2 * kPi / t;
  return gen.polar(r_lo, r_hi, margin * open, (1 - margin) * open);
}

double fd_laplacian(const std::function<double(double, double)>& f, double x, double y, double h) {
  return (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4 * f(x, y)) / (h * h);
}

std::vector<double> probe_radii() { return geometric_radii(1e-5, 1e-2, 12); }

}  // namespace

TEST_CASE("sector powers follow the sector-adapted branch") {
  // On the lower half-plane the argument lies in (pi, 2pi), not (-pi, 0).
  const double t = 1.2;
  const auto p = PlanePointd::polar(0.7, 4.0);
  CHECK(sector_im_power(0.6, t, p.x(), p.y()) ==
        doctest::Approx(std::pow(0.7, 0.6) * std::sin(0.6 * 4.0)).epsilon(1e-13));
  CHECK(std::isnan(sector_im_power(0.6, 2.0, 0.0, -1.0)));
  CHECK(sector_im_power(0.6, 2.0, 0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(sector_im_power_jet(0.5, 2.0, PlanePointd::cartesian(0.0, 0.0)), DomainError);
}

TEST_CASE("sector power jets match central differences") {
  Gen gen(31);
  for (int i = 0; i < 200; ++i) {
    const double t = gen.uniform(1.1, 4.0);
    const double a = gen.integer(0, 1) ? t / 2 : t;
    const auto p = inside(gen, t, 0.1, 1.5, 0.1);
    const Jet2d j = sector_im_power_jet(a, t, p);
    const auto f = [&](double x, double y) { return sector_im_power(a, t, x, y); };
    const double h = 1e-5;
    const double gx = (f(p.x() + h, p.y()) - f(p.x() - h, p.y())) / (2 * h);
    const double gy = (f(p.x(), p.y() + h) - f(p.x(), p.y() - h)) / (2 * h);
    CHECK(j.value == doctest::Approx(f(p.x(), p.y())).epsilon(1e-13));
    CHECK(std::abs(j.grad.x() - gx) <= 1e-7 * (1 + j.grad.norm()));
    CHECK(std::abs(j.grad.y() - gy) <= 1e-7 * (1 + j.grad.norm()));
    CHECK(std::abs(j.laplacian()) <= 1e-10 * (1 + std::sqrt(j.hessian_norm2())));
  }
}

TEST_CASE("Kenig pair at t = 2 is Im z + eps Im z^2 on the upper half-plane") {
  const auto pair = kenig_pair(2.0, 0.1);
  CHECK(pair.opening() == doctest::Approx(kPi));
  Gen gen(32);
  for (int i = 0; i < 100; ++i) {
    const auto p = inside(gen, 2.0, 0.01, 2.0, 0.0);
    const double x = p.x(), y = p.y();
    CHECK(pair.u(x, y) == doctest::Approx(y + 0.1 * 2 * x * y).epsilon(1e-12));
    CHECK(pair.v(x, y) == doctest::Approx(y).epsilon(1e-12));
  }
}

TEST_CASE("Kenig pair at t = 4 lives on the first quadrant") {
  const auto pair = kenig_pair(4.0, 0.05);
  CHECK(pair.opening() == doctest::Approx(kPi / 2));
  for (double r : {0.1, 0.5, 1.0, 1.9}) {
    CHECK(std::abs(pair.v(r, 0.0)) <= 1e-15);
    CHECK(std::abs(pair.v(0.0, r)) <= 1e-14);
    CHECK(std::abs(pair.u(r, 0.0)) <= 1e-15);
    CHECK(std::abs(pair.u(0.0, r)) <= 1e-13);
    CHECK(pair.v(r * 0.6, r * 0.8) == doctest::Approx(2 * r * r * 0.48).epsilon(1e-12));
  }
}

TEST_CASE("Kenig pair at t = 1.5 is harmonic") {
  const auto pair = kenig_pair(1.5, 0.1);
  Gen gen(33);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto p = inside(gen, 1.5, 0.05, 2.0);
    worst = std::max({worst, std::abs(pair.u_jet(p).laplacian()), std::abs(pair.v_jet(p).laplacian())});
  }
  CHECK(worst < 1e-9);
  // Central differences agree to order h^2.
  const auto p = PlanePointd::polar(0.8, 1.3);
  const double h = 1e-3;
  const double lap = fd_laplacian([&](double x, double y) { return pair.u(x, y); }, p.x(), p.y(), h);
  CHECK(std::abs(lap) <= 10 * h * h);
}

TEST_CASE("Kenig positivity threshold equals 2^(-t/2 - 1)") {
  // Im z^t / Im z^{t/2} = 2 r^{t/2} cos(t theta / 2), most negative at the far edge of B_2.
  for (double t : {1.2, 1.5, 2.0, 2.5, 3.0, 4.0}) {
    const double exact = std::pow(2.0, -t / 2 - 1);
    CHECK(kenig_positivity_threshold(t) == doctest::Approx(exact).epsilon(1e-6));
    CHECK(kenig_positivity_threshold(t) >= exact * (1 - 1e-12));
  }
}

TEST_CASE("Kenig fields are positive inside the sector") {
  Gen gen(34);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = gen.uniform(1.1, 4.0);
    const double eps = gen.uniform(0.01, 0.99) * kenig_positivity_threshold(t);
    const auto pair = kenig_pair(t, eps);
    for (int i = 0; i < 50; ++i) {
      const auto p = inside(gen, t, 1e-3, 2.0, 1e-3);
      CHECK(pair.v(p.x(), p.y()) > 0);
      CHECK(pair.u(p.x(), p.y()) > 0);
    }
  }
}

TEST_CASE("Kenig pair errors") {
  CHECK_THROWS_AS(kenig_pair(1.0, 0.1), DomainError);
  CHECK_THROWS_AS(kenig_pair(0.5, 0.1), DomainError);
  CHECK_THROWS_AS(kenig_pair(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(kenig_pair(2.0, 0.3), DomainError);
  CHECK_THROWS_AS(kenig_pair(2.0, 0.1).log_quotient_gradient(PlanePointd::cartesian(0.5, -0.5)),
                  DomainError);
}

TEST_CASE("log-quotient gradient matches the closed form") {
  Gen gen(35);
  for (int i = 0; i < 100; ++i) {
    const double t = gen.uniform(1.1, 3.5);
    const auto pair = kenig_pair(t, 0.5 * kenig_positivity_threshold(t));
    const auto p = inside(gen, t, 0.01, 1.5);
    const Jet2d ju = pair.u_jet(p), jv = pair.v_jet(p);
    const Vec2d expect = ju.grad / ju.value - jv.grad / jv.value;
    CHECK((pair.log_quotient_gradient(p) - expect).norm() <= 1e-10 * (1 + expect.norm()));
  }
}

TEST_CASE("blow-up slopes for the listed cases") {
  const auto radii = probe_radii();
  CHECK(std::abs(blowup_exponent(kenig_pair(1.5, 0.1), radii).slope + 0.25) <= 0.05);
  CHECK(std::abs(blowup_exponent(kenig_pair(2.0, 0.1), radii).slope) <= 0.05);
  CHECK(std::abs(blowup_exponent(kenig_pair(3.0, 0.05), radii).slope - 0.5) <= 0.05);
}

TEST_CASE("slope sweep matches t/2 - 1 and the sign of t - 2") {
  const auto radii = probe_radii();
  for (int i = 1; i <= 19; ++i) {
    const double t = 1.0 + 0.1 * i;
    const auto pair = kenig_pair(t, 0.5 * kenig_positivity_threshold(t));
    const double slope = blowup_exponent(pair, radii).slope;
    CHECK(std::abs(slope - (t / 2 - 1)) <= 0.05);
    if (i < 10) CHECK(slope < 0);
    if (i > 10) CHECK(slope > 0);
    const auto rep = kenig_regularity(pair, radii);
    CHECK(rep.passed());
    CHECK(rep.note == (t < 2 ? "blow-up" : "bounded"));
  }
}

TEST_CASE("integer t gives a bounded log-quotient gradient near the vertex") {
  Gen gen(36);
  for (double t : {2.0, 3.0, 4.0}) {
    const auto pair = kenig_pair(t, 0.5 * kenig_positivity_threshold(t));
    double outer = 0.0, inner = 0.0;
    for (int i = 0; i < 2000; ++i) {
      outer = std::max(outer, pair.log_quotient_gradient(inside(gen, t, 1e-2, 1.0, 1e-4)).norm());
      inner = std::max(inner, pair.log_quotient_gradient(inside(gen, t, 1e-6, 1e-2, 1e-4)).norm());
    }
    CHECK(std::isfinite(outer));
    CHECK(inner <= outer * 1.01 + 1e-12);
  }
}

TEST_CASE("log-log fit recovers an exact power law") {
  const auto radii = geometric_radii(1e-4, 0.1, 10);
  CHECK(radii.size() == 10);
  CHECK(radii.front() == doctest::Approx(1e-4));
  CHECK(radii.back() == doctest::Approx(0.1));
  for (size_t i = 1; i < radii.size(); ++i)
    CHECK(radii[i] / radii[i - 1] == doctest::Approx(std::pow(1e3, 1.0 / 9)));
  std::vector<double> values;
  for (double r : radii) values.push_back(3.0 * std::pow(r, -0.37));
  const auto fit = fit_log_log(radii, values);
  CHECK(fit.slope == doctest::Approx(-0.37).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.max_residual <= 1e-12);
  values[2] = -1.0;
  CHECK_THROWS_AS(fit_log_log(radii, values), NumericalBreakdown);
  CHECK_THROWS_AS(fit_log_log(radii, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(geometric_radii(0.0, 1.0, 5), DomainError);
  CHECK_THROWS_AS(geometric_radii(1.0, 0.5, 5), DomainError);
  CHECK_THROWS_AS(geometric_radii(0.1, 0.5, 1), DomainError);
  CHECK_THROWS_AS(blowup_exponent(kenig_pair(2.0, 0.1), geometric_radii(1e-3, 0.1, 7)), DomainError);
  CHECK_THROWS_AS(blowup_exponent(kenig_pair(2.0, 0.1), geometric_radii(1e-3, 0.6, 8)), DomainError);
}

TEST_CASE("sector Green function at t = 2 is the half-plane one") {
  Gen gen(37);
  for (int i = 0; i < 50; ++i) {
    const auto p = inside(gen, 2.0, 0.5, 3.0);
    const auto z = inside(gen, 2.0, 0.05, 3.0);
    const std::complex<double> zc(z.x(), z.y()), pc(p.x(), p.y());
    const double exact = std::log(std::abs((zc - std::conj(pc)) / (zc - pc))) / (2 * kPi);
    CHECK(sector_green(2.0, p, z) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("sector Green function is symmetric and positive") {
  Gen gen(38);
  for (int i = 0; i < 20; ++i) {
    const double t = gen.uniform(1.1, 4.0);
    const auto p = inside(gen, t, 0.1, 3.0);
    const auto z = inside(gen, t, 0.1, 3.0);
    const double a = sector_green(t, p, z), b = sector_green(t, z, p);
    CHECK(a > 0);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, a));
  }
}

TEST_CASE("sector Green function vanishes at the edges") {
  for (double t : {1.5, 2.0, 2.5, 3.5}) {
    const auto p = default_green_pole(t);
    const double open = 2 * kPi / t;
    for (double r : {0.1, 0.7, 1.5, 4.0}) {
      CHECK(sector_green(t, p, PlanePointd::polar(r, 1e-8 / r)) < 1e-6);
      CHECK(sector_green(t, p, PlanePointd::polar(r, open - 1e-8 / r)) < 1e-6);
    }
  }
}

TEST_CASE("sector Green function is harmonic away from pole and edges") {
  Gen gen(39);
  const double h = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const double t = gen.uniform(1.1, 4.0);
    const auto p = default_green_pole(t);
    const auto z = inside(gen, t, 0.2, 2.0, 0.1);
    const auto G = [&](double x, double y) { return sector_green(t, p, PlanePointd::cartesian(x, y)); };
    CHECK(std::abs(fd_laplacian(G, z.x(), z.y(), h)) <= 10 * h * h);
  }
}

TEST_CASE("sector Green gradient matches central differences") {
  Gen gen(40);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double t = gen.uniform(1.1, 4.0);
    const auto p = default_green_pole(t);
    const auto z = inside(gen, t, 0.05, 2.0, 0.05);
    const auto G = [&](double x, double y) { return sector_green(t, p, PlanePointd::cartesian(x, y)); };
    const Vec2d g = sector_green_gradient(t, p, z);
    const Vec2d fd((G(z.x() + h, z.y()) - G(z.x() - h, z.y())) / (2 * h),
                   (G(z.x(), z.y() + h) - G(z.x(), z.y() - h)) / (2 * h));
    CHECK((g - fd).norm() <= 1e-7 * (1 + g.norm()));
  }
}

TEST_CASE("sector Green function errors") {
  const auto p = default_green_pole(2.0);
  CHECK_THROWS_AS(sector_green(2.0, p, p), DomainError);
  CHECK_THROWS_AS(sector_green(2.0, p, PlanePointd::cartesian(0.5, -0.5)), DomainError);
  CHECK_THROWS_AS(sector_green(2.0, PlanePointd::cartesian(0.5, -0.5), p), DomainError);
  CHECK_THROWS_AS(sector_green(1.0, p, PlanePointd::cartesian(0.5, 0.5)), DomainError);
  CHECK_THROWS_AS(sector_green_gradient(2.0, p, p), DomainError);
}

TEST_CASE("default pole sits at |p| = 3 off the bisector") {
  for (double t : {1.2, 2.0, 3.0}) {
    const auto p = default_green_pole(t);
    CHECK(p.r() == doctest::Approx(3.0));
    CHECK(p.arg_positive() == doctest::Approx(0.3 * 2 * kPi / t));
  }
}

TEST_CASE("Green quotient verdicts for the listed cases") {
  const auto radii = probe_radii();
  const auto a = green_quotient_regularity(1.5, default_green_pole(1.5), radii);
  CHECK(a.note == "blow-up");
  CHECK(a.passed());
  const auto b = green_quotient_regularity(2.0, default_green_pole(2.0), radii);
  CHECK(b.note == "bounded");
  CHECK(b.passed());
  const auto c = green_quotient_regularity(2.5, default_green_pole(2.5), radii);
  CHECK(c.note == "bounded");
  CHECK(c.passed());
  CHECK(std::abs(c.extra("slope") - 0.25) <= 0.05);
  CHECK_THROWS_AS(green_quotient_regularity(2.0, PlanePointd::polar(2.0, 1.0), radii), DomainError);
}

TEST_CASE("Green quotient transition across the t sweep") {
  const auto radii = probe_radii();
  for (int i = 1; i <= 19; ++i) {
    const double t = 1.0 + 0.1 * i;
    const auto rep = green_quotient_regularity(t, default_green_pole(t), radii);
    CHECK(rep.passed());
    CHECK(rep.note == (t < 2 ? "blow-up" : "bounded"));
    CHECK(std::abs(rep.extra("slope") - (t / 2 - 1)) <= 0.05);
  }
}
