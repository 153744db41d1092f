#pragma once

#include <vector>

namespace sharedzero {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Integrates f over [a, b].
  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Nodes and weights of a composite rule: `panels` equal panels on [a, b]
/// with an n-point Gauss-Legendre rule on each.
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<int> panel;  // panel index of each node
};

CompositeRule composite_gauss_legendre(double a, double b, int panels, int n_per_panel);

}  // namespace sharedzero
