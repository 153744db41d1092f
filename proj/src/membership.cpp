#include <cmath>
#include <deque>
#include <numbers>
#include <vector>

#include "sharedzero/harmonic_library.hpp"

namespace sharedzero {

namespace {

struct Lattice {
  int n{0};
  double h{0.0};
  std::vector<PlanePointd> nodes;  // n*n, row-major; only valid where inside
  std::vector<char> inside;

  int id(int i, int j) const { return i * n + j; }
};

bool in_region(const GridSpec& g, const PlanePointd& p) {
  if (!(p.r() < g.radius)) return false;
  switch (g.region) {
    case GridSpec::Region::disk:
      return true;
    case GridSpec::Region::annulus:
      return p.r() > g.r_in;
    case GridSpec::Region::sector: {
      const double t = p.arg_positive();
      return p.r() > 0 && t > 0 && t < g.opening;
    }
  }
  return false;
}

Lattice make_lattice(const GridSpec& g) {
  g.validate();
  Lattice lat;
  lat.n = g.n_radial;
  lat.h = 2 * g.radius / lat.n;
  lat.nodes.resize(static_cast<size_t>(lat.n) * lat.n);
  lat.inside.resize(lat.nodes.size());
  for (int i = 0; i < lat.n; ++i)
    for (int j = 0; j < lat.n; ++j) {
      const auto p = PlanePointd::cartesian(-g.radius + (i + 0.5) * lat.h,
                                            -g.radius + (j + 0.5) * lat.h);
      lat.nodes[lat.id(i, j)] = p;
      lat.inside[lat.id(i, j)] = in_region(g, p);
    }
  return lat;
}

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

VerificationReport membership_check(const HarmonicField& u, const HarmonicField& v,
                                    const GridSpec& grid) {
  VerificationReport rep("membership", 0.0, Relation::at_most, 0.0);
  rep.add_param("u", u.describe());
  rep.add_param("v", v.describe());

  Lattice lat = make_lattice(grid);
  const size_t total = lat.nodes.size();
  std::vector<double> uu(total, 0.0), vv(total, 0.0);
  std::vector<char> flagged(total, 0), flagged_u(total, 0), flagged_v(total, 0);
  const double band = std::max(grid.exclusion_band, 1.5 * lat.h);
  double su = 0.0, sv = 0.0;
  for (size_t n = 0; n < total; ++n) {
    if (!lat.inside[n]) continue;
    const auto& p = lat.nodes[n];
    uu[n] = u(p.x(), p.y());
    vv[n] = v(p.x(), p.y());
    if (!std::isfinite(uu[n]) || !std::isfinite(vv[n])) {
      lat.inside[n] = 0;
      continue;
    }
    su = std::max(su, std::abs(uu[n]));
    sv = std::max(sv, std::abs(vv[n]));
    flagged_u[n] = u.zero_set().distance(p.x(), p.y()) < band;
    flagged_v[n] = v.zero_set().distance(p.x(), p.y()) < band;
    flagged[n] = flagged_u[n] || flagged_v[n];
  }
  const double delta = 1e-9;
  auto small_u = [&](size_t n) { return std::abs(uu[n]) < delta * su; };
  auto small_v = [&](size_t n) { return std::abs(vv[n]) < delta * sv; };

  long violations = 0, samples = 0;
  auto violate = [&](size_t n) {
    if (violations == 0) {
      rep.x_ext = lat.nodes[n].x();
      rep.y_ext = lat.nodes[n].y();
      rep.ext_index = static_cast<long>(n);
    }
    ++violations;
  };

  // |u| small <=> |v| small away from the declared zero sets.
  for (size_t n = 0; n < total; ++n) {
    if (!lat.inside[n]) continue;
    ++samples;
    if (!flagged[n] && small_u(n) != small_v(n)) violate(n);
  }

  // Sign changes of u and v across the same lattice edges.
  for (int i = 0; i < lat.n; ++i)
    for (int j = 0; j < lat.n; ++j) {
      const int a = lat.id(i, j);
      if (!lat.inside[a]) continue;
      for (int b : {i + 1 < lat.n ? lat.id(i + 1, j) : -1, j + 1 < lat.n ? lat.id(i, j + 1) : -1}) {
        if (b < 0 || !lat.inside[b]) continue;
        if (small_u(a) || small_u(b) || small_v(a) || small_v(b)) continue;
        const bool cu = sign_of(uu[a]) != sign_of(uu[b]);
        const bool cv = sign_of(vv[a]) != sign_of(vv[b]);
        if (cu != cv) violate(a);
      }
    }

  // u*v keeps one sign on each component of the complement of either band, so
  // a zero curve present in only one field is caught inside the other's component.
  int components = 0;
  for (const auto* excl : {&flagged_u, &flagged_v}) {
    std::vector<int> label(total, -1);
    int count = 0;
    for (size_t start = 0; start < total; ++start) {
      if (!lat.inside[start] || (*excl)[start] || label[start] >= 0) continue;
      const int c = count++;
      int ref = 0;
      std::deque<int> queue{static_cast<int>(start)};
      label[start] = c;
      while (!queue.empty()) {
        const int n = queue.front();
        queue.pop_front();
        if (!small_u(n) && !small_v(n)) {
          const int s = sign_of(uu[n]) * sign_of(vv[n]);
          if (ref == 0) ref = s;
          if (s != ref) violate(n);
        }
        const int i = n / lat.n, j = n % lat.n;
        const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (const auto& q : nb) {
          if (q[0] < 0 || q[0] >= lat.n || q[1] < 0 || q[1] >= lat.n) continue;
          const int m = lat.id(q[0], q[1]);
          if (!lat.inside[m] || (*excl)[m] || label[m] >= 0) continue;
          label[m] = c;
          queue.push_back(m);
        }
      }
    }
    components = std::max(components, count);
  }

  rep.samples = samples;
  rep.extremal = static_cast<double>(violations);
  rep.add_extra("components", components);
  rep.finalize();
  return rep;
}

VerificationReport zero_set_check(const HarmonicField& u, const GridSpec& grid) {
  VerificationReport rep("zero_set", 0.0, Relation::at_most, 0.0);
  rep.add_param("u", u.describe());
  Lattice lat = make_lattice(grid);
  const double band = std::max(grid.exclusion_band, 1.5 * lat.h);
  int ref = 0;
  long violations = 0;
  for (size_t n = 0; n < lat.nodes.size(); ++n) {
    if (!lat.inside[n]) continue;
    const auto& p = lat.nodes[n];
    const double value = u(p.x(), p.y());
    if (!std::isfinite(value)) continue;
    if (u.zero_set().distance(p.x(), p.y()) < band) continue;
    ++rep.samples;
    const int s = sign_of(value) * sign_of(u.zero_set().indicator(p.x(), p.y()));
    if (ref == 0 && s != 0) ref = s;
    if (s == 0 || s != ref) {
      if (violations == 0) {
        rep.x_ext = p.x();
        rep.y_ext = p.y();
        rep.ext_index = static_cast<long>(n);
      }
      ++violations;
    }
  }
  rep.extremal = static_cast<double>(violations);
  rep.finalize();
  return rep;
}

}  // namespace sharedzero
