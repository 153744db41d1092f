#pragma once

#include <functional>
#include <numbers>
#include <vector>

namespace sharedzero {

/// Nonnegative samples at N uniform angles phi_j = j * (pi/k) / (N - 1) on
/// the arc of the sector S_k, linearly interpolated.
class SectorBoundaryData {
 public:
  SectorBoundaryData(int k, std::vector<double> samples);

  static SectorBoundaryData from_function(int k, int n, const std::function<double(double)>& f);

  int k() const { return k_; }
  int size() const { return static_cast<int>(samples_.size()); }
  const std::vector<double>& samples() const { return samples_; }
  double opening() const { return std::numbers::pi / k_; }
  double spacing() const { return opening() / (size() - 1); }
  double angle(int j) const { return j * spacing(); }
  bool is_zero() const;

  /// Linear interpolant at phi in [0, pi/k].
  double operator()(double phi) const;

  SectorBoundaryData scaled(double c) const;

 private:
  int k_;
  std::vector<double> samples_;
};

/// Samples at N uniform angles 2*pi*j/N on a circle, periodic linear
/// interpolation.
class DiskBoundaryData {
 public:
  explicit DiskBoundaryData(std::vector<double> samples);

  int size() const { return static_cast<int>(samples_.size()); }
  const std::vector<double>& samples() const { return samples_; }
  double spacing() const { return 2 * std::numbers::pi / size(); }
  double operator()(double phi) const;

 private:
  std::vector<double> samples_;
};

}  // namespace sharedzero
