#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "library.hpp"
#include "sharedzero/grid.hpp"
#include "sharedzero/sector_poisson.hpp"

using namespace sharedzero;
using sharedzero::testing::Gen;
using sharedzero::testing::sine_data;

namespace {

constexpr double kPi = std::numbers::pi;

PlanePointd in_sector(Gen& gen, int k, double r_lo, double r_hi) {
  return gen.polar(r_lo, r_hi, 0.0, kPi / k);
}

SectorBoundaryData bump_data(int k, int n) {
  const double c = kPi / (2 * k);
  const double w = 0.05 / k;
  return SectorBoundaryData::from_function(k, n, [&](double phi) {
    const double s = (phi - c) / w;
    return std::exp(-s * s);
  });
}

SectorBoundaryData random_samples(Gen& gen, int k, int n) {
  std::vector<double> s(n);
  for (auto& x : s) x = gen.uniform(0.0, 1.0);
  return SectorBoundaryData(k, s);
}

}  // namespace

TEST_CASE("kernel tends to 1 at the center") {
  for (int k = 1; k <= 6; ++k)
    for (double phi : {0.0, 0.3 / k, kPi / k})
      for (double r : {1e-2, 1e-4, 1e-6}) {
        const double rk = std::pow(r, k);
        // 1 / ((1 - 2 rk cos + rk^2)(...)) differs from 1 by at most ~4 rk.
        CHECK(std::abs(kernel(PlanePointd::polar(r, 0.5 / k), phi, k) - 1) <= 4 * rk * (1 + 4 * rk) + 1e-15);
      }
}

TEST_CASE("kernel hand value for k = 1 at z = i/2") {
  const double K = kernel(PlanePointd::cartesian(0.0, 0.5), kPi / 2, 1);
  CHECK(K == doctest::Approx(1.0 / (0.25 * 2.25)).epsilon(1e-14));
}

TEST_CASE("kernel is symmetric under the sector mirror") {
  Gen gen(11);
  for (int i = 0; i < 100; ++i) {
    const int k = gen.integer(1, 6);
    const double r = gen.uniform(0.01, 0.95);
    const double t = gen.uniform(0.0, kPi / k);
    const double phi = gen.uniform(0.0, kPi / k);
    const double a = kernel(PlanePointd::polar(r, t), phi, k);
    const double b = kernel(PlanePointd::polar(r, kPi / k - t), kPi / k - phi, k);
    CHECK(std::abs(a - b) <= 1e-12 * a);
  }
}

TEST_CASE("kernel domain errors") {
  CHECK_THROWS_AS(kernel(PlanePointd::cartesian(0.0, 1.0), 0.5, 1), DomainError);
  CHECK_THROWS_AS(kernel(PlanePointd::cartesian(0.0, 1.5), 0.5, 1), DomainError);
  CHECK_THROWS_AS(kernel(PlanePointd::polar(0.5, 1.2), 0.2, 3), DomainError);
  CHECK_THROWS_AS(kernel(PlanePointd::cartesian(0.0, -0.5), 0.2, 1), DomainError);
  CHECK_THROWS_AS(kernel(PlanePointd::cartesian(0.0, 0.5), 0.2, 0), DomainError);
}

TEST_CASE("kernel gradient matches central differences") {
  Gen gen(12);
  const double h = 1e-5;
  for (int i = 0; i < 200; ++i) {
    const int k = gen.integer(1, 6);
    const auto z = in_sector(gen, k, 0.05, 0.6);
    const double phi = gen.uniform(0.0, kPi / k);
    // Central differences only need the kernel formula, not the sector test.
    const double t = z.arg_positive();
    if (t < 1e-3 || t > kPi / k - 1e-3) continue;
    const Vec2d g = kernel_gradient(z, phi, k);
    const double gx = (kernel(PlanePointd::cartesian(z.x() + h, z.y()), phi, k) -
                       kernel(PlanePointd::cartesian(z.x() - h, z.y()), phi, k)) / (2 * h);
    const double gy = (kernel(PlanePointd::cartesian(z.x(), z.y() + h), phi, k) -
                       kernel(PlanePointd::cartesian(z.x(), z.y() - h), phi, k)) / (2 * h);
    const double scale = 1 + g.norm();
    CHECK(std::abs(g.x() - gx) <= 1e-6 * scale);
    CHECK(std::abs(g.y() - gy) <= 1e-6 * scale);
  }
}

TEST_CASE("sine data reproduce r^k sin k theta") {
  Gen gen(13);
  for (int k = 1; k <= 6; ++k) {
    const auto data = sine_data(k, 16385);
    for (int i = 0; i < 20; ++i) {
      const auto z = in_sector(gen, k, 0.0, 0.5);
      const double exact = std::pow(z.r(), k) * std::sin(k * z.arg_positive());
      CHECK(std::abs(poisson_eval(data, z) - exact) <= 1e-8);
    }
  }
}

TEST_CASE("positive sector field is reproduced from its arc samples") {
  // 0.75 sin kp + 0.25 sin 3kp = 1.5 s - s^3 >= 0 with s = sin kp.
  Gen gen(14);
  for (int k = 1; k <= 4; ++k) {
    const auto data = SectorBoundaryData::from_function(
        k, 16385, [k](double p) { return 0.75 * std::sin(k * p) + 0.25 * std::sin(3 * k * p); });
    for (int i = 0; i < 20; ++i) {
      const auto z = in_sector(gen, k, 0.0, 0.5);
      const double r = z.r(), t = z.arg_positive();
      const double exact =
          0.75 * std::pow(r, k) * std::sin(k * t) + 0.25 * std::pow(r, 3 * k) * std::sin(3 * k * t);
      CHECK(std::abs(poisson_eval(data, z) - exact) <= 1e-6);
    }
  }
}

TEST_CASE("zero data give zero") {
  const SectorBoundaryData data(2, std::vector<double>(33, 0.0));
  Gen gen(15);
  for (int i = 0; i < 20; ++i) CHECK(poisson_eval(data, in_sector(gen, 2, 0.0, 0.9)) == 0.0);
}

TEST_CASE("quadrature is converged under node doubling") {
  Gen gen(16);
  for (int k : {1, 3, 5}) {
    const auto data = bump_data(k, 65);
    const SectorIntegrator quad(data);
    for (int i = 0; i < 20; ++i) {
      const auto z = in_sector(gen, k, 0.0, 0.5);
      const GJet j = quad.eval(z);
      CHECK(j.nodes >= 64);
      // A second integrator starts from scratch; both must agree to the stopping tolerance.
      const GJet again = SectorIntegrator(data).eval(z);
      CHECK(std::abs(j.g - again.g) <= 1e-10 * std::max(1.0, std::abs(j.g)));
      CHECK(std::abs(j.g - g_eval(data, z).g) <= 1e-10 * std::max(1.0, std::abs(j.g)));
    }
  }
}

TEST_CASE("poisson_eval outside the sector throws") {
  const auto data = sine_data(2, 33);
  CHECK_THROWS_AS(poisson_eval(data, PlanePointd::polar(0.3, 2.0)), DomainError);
  CHECK_THROWS_AS(poisson_eval(data, PlanePointd::polar(1.0, 0.5)), DomainError);
  CHECK_THROWS_AS(poisson_eval(data, PlanePointd::polar(0.3, -0.1)), DomainError);
}

TEST_CASE("positivity for nonzero nonnegative data") {
  Gen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = gen.integer(1, 6);
    std::vector<double> s(gen.integer(16, 64), 0.0);
    s[gen.integer(1, static_cast<int>(s.size()) - 2)] = gen.uniform(0.1, 2.0);
    const SectorBoundaryData data(k, s);
    for (int i = 0; i < 10; ++i) {
      auto z = in_sector(gen, k, 0.01, 0.5);
      const double t = z.arg_positive();
      if (t < 1e-6 || t > kPi / k - 1e-6) continue;
      CHECK(poisson_eval(data, z) > 0);
    }
  }
}

TEST_CASE("log quotient gradient is the sum of its two pieces") {
  Gen gen(18);
  const int k = 3;
  const auto data = bump_data(k, 65);
  for (int i = 0; i < 20; ++i) {
    const auto z = in_sector(gen, k, 0.05, 0.5);
    const GJet j = g_eval(data, z);
    const double r = z.r();
    const double r2k = std::pow(r, 2 * k);
    const Vec2d radial(z.x() / r, z.y() / r);
    const Vec2d expect = -2.0 * k * r2k / r / (1 - r2k) * radial + j.grad / j.g;
    CHECK((log_quotient_gradient(data, z) - expect).norm() <= 1e-10 * (1 + expect.norm()));
  }
}

TEST_CASE("kernel bounds for k = 1 lie in the triangle-inequality interval") {
  const auto kb = kernel_bounds(1);
  // The closed sweep reaches the corner z = -1/2, phi = 0 where K = 1/1.5^4 exactly.
  CHECK(kb.C1 >= 1.0 / (1.5 * 1.5 * 1.5 * 1.5) * (1 - 1e-14));
  CHECK(kb.C1 < 16.0);
  CHECK(kb.C2 > 0);
  CHECK(std::isfinite(kb.ratio()));
}

TEST_CASE("kernel bounds respect the lower bound 1/(1+r^k)^4 for every k") {
  for (int k = 1; k <= 6; ++k) {
    const auto kb = kernel_bounds(k, 0.5, 64);
    CHECK(kb.C1 >= 1.0 / std::pow(1 + std::pow(0.5, k), 4) * (1 - 1e-12));
    CHECK(kb.C1 <= 1.0);
  }
}

TEST_CASE("kernel bounds are monotone and stable under doubling") {
  for (int k = 1; k <= 4; ++k) {
    const auto a = kernel_bounds(k, 0.5, 64);
    const auto b = kernel_bounds(k, 0.5, 128);
    CHECK(b.C1 <= a.C1);
    CHECK(b.C2 >= a.C2);
    CHECK(std::abs(b.C1 - a.C1) / a.C1 < 0.01);
    CHECK(std::abs(b.C2 - a.C2) / a.C2 < 0.01);
  }
}

TEST_CASE("kernel bounds argument errors") {
  CHECK_THROWS_AS(kernel_bounds(1, 0.5, 63), DomainError);
  CHECK_THROWS_AS(kernel_bounds(0), DomainError);
  CHECK_THROWS_AS(kernel_bounds(1, 1.0), DomainError);
  CHECK_THROWS_AS(kernel_bounds(1, 0.0), DomainError);
}

TEST_CASE("certified constant decomposition") {
  for (int k = 1; k <= 6; ++k) {
    const auto kb = kernel_bounds(k, 0.5, 64);
    const double r2k = std::pow(0.5, 2 * k);
    const double lf = 2.0 * k * r2k / 0.5 / (1 - r2k);
    CHECK(log_factor_gradient_sup(k, 0.5) == doctest::Approx(lf).epsilon(1e-14));
    CHECK(certified_constant(kb) == doctest::Approx(kb.ratio() + lf / k).epsilon(1e-14));
  }
}

TEST_CASE("sine data make the normalized quotient constant") {
  for (int k = 1; k <= 4; ++k) {
    const auto data = sine_data(k, 4097);
    const auto kb = kernel_bounds(k, 0.5, 64);
    const auto rep = sector_log_gradient_check(data, GridSpec::sector(kPi / k, 0.5, 10, 10), kb);
    CHECK(rep.passed());
    CHECK(rep.extremal <= 1e-5);
    CHECK(rep.extra("sup_grad_log_g") <= kb.ratio());
    CHECK(rep.bound == doctest::Approx(certified_constant(kb) * k));
  }
}

TEST_CASE("bump data pass strictly below the bound") {
  for (int k = 1; k <= 4; ++k) {
    const auto kb = kernel_bounds(k, 0.5, 64);
    const auto rep = sector_log_gradient_check(bump_data(k, 129), GridSpec::sector(kPi / k, 0.5, 12, 12), kb);
    CHECK(rep.passed());
    CHECK(rep.extremal < kb.ratio() + log_factor_gradient_sup(k, 0.5));
    CHECK(rep.extra("sup_grad_log_g") < kb.ratio());
  }
}

TEST_CASE("proportional data give identical log-gradients of g") {
  Gen gen(19);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = gen.integer(1, 6);
    const auto data = random_samples(gen, k, 33);
    const auto scaled = data.scaled(gen.uniform(0.01, 100.0));
    for (int i = 0; i < 10; ++i) {
      const auto z = in_sector(gen, k, 0.0, 0.5);
      const GJet a = g_eval(data, z), b = g_eval(scaled, z);
      const Vec2d la = a.grad / a.g, lb = b.grad / b.g;
      CHECK((la - lb).norm() <= 1e-12 * (1 + la.norm()));
    }
  }
}

TEST_CASE("certified inequality holds for random data, k <= 6") {
  Gen gen(20);
  std::vector<KernelBounds> kbs;
  for (int k = 1; k <= 6; ++k) kbs.push_back(kernel_bounds(k, 0.5, 64));
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 6;
    const auto data = random_samples(gen, k, gen.integer(16, 65));
    const auto rep =
        sector_log_gradient_check(data, GridSpec::sector(kPi / k, 0.5, 8, 8), kbs[k - 1]);
    CHECK(rep.passed());
    CHECK(rep.extremal <= rep.bound);
  }
}

TEST_CASE("sector_log_gradient_check errors") {
  const auto kb = kernel_bounds(2, 0.5, 64);
  const SectorBoundaryData zero(2, std::vector<double>(33, 0.0));
  CHECK_THROWS_AS(sector_log_gradient_check(zero, GridSpec::sector(kPi / 2, 0.5, 4, 4), kb),
                  DomainError);
  CHECK_THROWS_AS(sector_log_gradient_check(sine_data(3, 33), GridSpec::sector(kPi / 3, 0.5, 4, 4), kb),
                  DomainError);
  CHECK_THROWS_AS(sector_log_gradient_check(sine_data(2, 33), GridSpec::sector(kPi / 2, 0.8, 4, 4), kb),
                  DomainError);
}

TEST_CASE("precomputed weights agree with the adaptive integrator") {
  Gen gen(21);
  for (int k : {1, 2, 5}) {
    std::vector<PlanePointd> pts;
    for (int i = 0; i < 15; ++i) pts.push_back(in_sector(gen, k, 0.0, 0.5));
    const PoissonWeights w(k, 33, pts);
    for (int trial = 0; trial < 5; ++trial) {
      const auto data = random_samples(gen, k, 33);
      for (size_t i = 0; i < pts.size(); ++i) {
        const GJet a = w.at(i, data.samples());
        const GJet b = g_eval(data, pts[i]);
        CHECK(std::abs(a.g - b.g) <= 1e-9 * std::abs(b.g));
        CHECK((a.grad - b.grad).norm() <= 1e-9 * (1 + b.grad.norm()));
      }
    }
  }
  CHECK_THROWS_AS(PoissonWeights(1, 8, {}), DomainError);
  CHECK_THROWS_AS(PoissonWeights(1, 33, {PlanePointd::cartesian(0.1, 0.1)}).at(0, std::vector<double>(20, 1.0)),
                  DomainError);
}

TEST_CASE("boundary data validation") {
  CHECK_THROWS_AS(SectorBoundaryData(1, std::vector<double>(15, 1.0)), DomainError);
  CHECK_THROWS_AS(SectorBoundaryData(0, std::vector<double>(16, 1.0)), DomainError);
  std::vector<double> neg(16, 1.0);
  neg[3] = -0.1;
  CHECK_THROWS_AS(SectorBoundaryData(1, neg), DomainError);
  const auto d = sine_data(2, 17);
  CHECK(d(d.angle(4)) == doctest::Approx(d.samples()[4]));
  CHECK(d(0.5 * (d.angle(4) + d.angle(5))) == doctest::Approx(0.5 * (d.samples()[4] + d.samples()[5])));
}
