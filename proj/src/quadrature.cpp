#include "sharedzero/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sharedzero {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n must be >= 1");
  nodes_.resize(n);
  weights_.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double pn = n == 1 ? x : p1;
    const double pnm1 = n == 1 ? 1.0 : p0;
    dp = n * (x * pn - pnm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

CompositeRule composite_gauss_legendre(double a, double b, int panels, int n_per_panel) {
  if (panels < 1) throw std::invalid_argument("composite rule needs >= 1 panel");
  const GaussLegendre gl(n_per_panel);
  CompositeRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * n_per_panel);
  rule.weights.reserve(rule.nodes.capacity());
  rule.panel.reserve(rule.nodes.capacity());
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (int i = 0; i < gl.size(); ++i) {
      rule.nodes.push_back(mid + 0.5 * width * gl.nodes()[i]);
      rule.weights.push_back(0.5 * width * gl.weights()[i]);
      rule.panel.push_back(p);
    }
  }
  return rule;
}

}  // namespace sharedzero
