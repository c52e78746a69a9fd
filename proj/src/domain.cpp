#include "nlgreen/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

namespace nlg {
namespace {

double norm2(const Point& x, const Point& c, int dim) {
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) acc += (x[k] - c[k]) * (x[k] - c[k]);
  return std::sqrt(acc);
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw ValidationError("interval requires a < b");
  Domain d;
  d.kind = DomainKind::Interval;
  d.dim = 1;
  d.a = a;
  d.b = b;
  return d;
}

Domain Domain::ball(const Point& center, double radius, int dim) {
  if (!(radius > 0.0)) throw ValidationError("ball requires radius > 0");
  if (dim < 1 || dim > 3) throw ValidationError("ball dimension must be 1, 2 or 3");
  Domain d;
  d.kind = DomainKind::Ball;
  d.dim = dim;
  d.center = center;
  d.radius = radius;
  return d;
}

double Domain::volume() const {
  if (kind == DomainKind::Interval) return b - a;
  switch (dim) {
    case 1: return 2.0 * radius;
    case 2: return std::numbers::pi * radius * radius;
    default: return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  }
}

double Domain::diameter() const {
  return kind == DomainKind::Interval ? b - a : 2.0 * radius;
}

bool Domain::contains(const Point& x) const {
  if (kind == DomainKind::Interval) return x[0] > a && x[0] < b;
  return norm2(x, center, dim) < radius;
}

double boundary_distance(const Domain& domain, const Point& x) {
  double d;
  if (domain.kind == DomainKind::Interval)
    d = std::min(x[0] - domain.a, domain.b - x[0]);
  else
    d = domain.radius - norm2(x, domain.center, domain.dim);
  if (!(d > 0.0)) throw std::domain_error("point on or outside the boundary");
  return d;
}

double boundary_distance(const Domain& domain, double x) {
  return boundary_distance(domain, point1d(x));
}

double graded_map(double t, double grading) {
  if (t <= 0.5) return 0.5 * (1.0 - std::pow(1.0 - 2.0 * t, grading));
  return 0.5 * (1.0 + std::pow(2.0 * t - 1.0, grading));
}

namespace {

Grid make_interval_grid(const Domain& domain, int n, double grading) {
  Grid grid;
  grid.domain = domain;
  grid.grading = grading;
  grid.edges.resize(static_cast<std::size_t>(n) + 1);
  const double len = domain.b - domain.a;
  for (int i = 0; i <= n; ++i)
    grid.edges[static_cast<std::size_t>(i)] =
        domain.a + len * graded_map(static_cast<double>(i) / n, grading);
  grid.edges.front() = domain.a;
  grid.edges.back() = domain.b;
  grid.nodes.reserve(static_cast<std::size_t>(n));
  grid.weights.resize(n);
  grid.deltas.resize(n);
  for (int i = 0; i < n; ++i) {
    const double lo = grid.edges[static_cast<std::size_t>(i)];
    const double hi = grid.edges[static_cast<std::size_t>(i) + 1];
    const double mid = 0.5 * (lo + hi);
    grid.nodes.push_back(point1d(mid));
    grid.weights[i] = hi - lo;
    grid.deltas[i] = std::min(mid - domain.a, domain.b - mid);
  }
  return grid;
}

// Polar / spherical tensor grid: radius graded like the 1D map grades toward
// the domain center, angles equally spaced; cell volumes integrated exactly.
Grid make_ball_grid(const Domain& domain, int n, double grading) {
  if (domain.dim == 1) {
    Domain diameter = Domain::interval(domain.center[0] - domain.radius,
                                       domain.center[0] + domain.radius);
    Grid grid = make_interval_grid(diameter, n, grading);
    grid.domain = domain;
    return grid;
  }
  Grid grid;
  grid.domain = domain;
  grid.grading = grading;
  const double R = domain.radius;
  std::vector<double> weights;
  if (domain.dim == 2) {
    const int nr = std::max(2, static_cast<int>(std::sqrt(n / 2.0)));
    const int nt = std::max(4, (n + nr - 1) / nr);
    const double dth = 2.0 * std::numbers::pi / nt;
    for (int j = 0; j < nr; ++j) {
      const double r0 = R * std::pow(static_cast<double>(j) / nr, grading);
      const double r1 = R * std::pow(static_cast<double>(j + 1) / nr, grading);
      const double rm = 0.5 * (r0 + r1);
      const double area = 0.5 * (r1 * r1 - r0 * r0) * dth;
      for (int k = 0; k < nt; ++k) {
        const double th = (k + 0.5) * dth;
        grid.nodes.push_back(Point{domain.center[0] + rm * std::cos(th),
                                   domain.center[1] + rm * std::sin(th), 0.0});
        weights.push_back(area);
      }
    }
  } else {
    const int nr = std::max(2, static_cast<int>(std::cbrt(n / 4.0)));
    const int nt = 2 * nr;
    const int np = 2 * nr;
    const double dph = 2.0 * std::numbers::pi / np;
    for (int j = 0; j < nr; ++j) {
      const double r0 = R * std::pow(static_cast<double>(j) / nr, grading);
      const double r1 = R * std::pow(static_cast<double>(j + 1) / nr, grading);
      const double rm = 0.5 * (r0 + r1);
      const double rad = (r1 * r1 * r1 - r0 * r0 * r0) / 3.0;
      for (int l = 0; l < nt; ++l) {
        const double th0 = l * std::numbers::pi / nt;
        const double th1 = (l + 1) * std::numbers::pi / nt;
        const double thm = 0.5 * (th0 + th1);
        const double wedge = rad * (std::cos(th0) - std::cos(th1)) * dph;
        for (int k = 0; k < np; ++k) {
          const double ph = (k + 0.5) * dph;
          grid.nodes.push_back(
              Point{domain.center[0] + rm * std::sin(thm) * std::cos(ph),
                    domain.center[1] + rm * std::sin(thm) * std::sin(ph),
                    domain.center[2] + rm * std::cos(thm)});
          weights.push_back(wedge);
        }
      }
    }
  }
  grid.weights = Eigen::Map<const Vec>(weights.data(),
                                       static_cast<Eigen::Index>(weights.size()));
  grid.deltas.resize(static_cast<Eigen::Index>(grid.nodes.size()));
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    grid.deltas[static_cast<Eigen::Index>(i)] = boundary_distance(domain, grid.nodes[i]);
  return grid;
}

}  // namespace

Grid make_graded_grid(const Domain& domain, int n, double grading) {
  if (n < 8) throw ValidationError("make_graded_grid requires n >= 8");
  if (grading < 1.0) throw ValidationError("make_graded_grid requires grading >= 1");
  if (domain.kind == DomainKind::Interval) return make_interval_grid(domain, n, grading);
  return make_ball_grid(domain, n, grading);
}

void write_grid_csv(const Grid& grid, std::ostream& out) {
  out << "index,x,y,z,weight,delta\n";
  char line[160];
  for (int i = 0; i < grid.size(); ++i) {
    const Point& x = grid.nodes[static_cast<std::size_t>(i)];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, x[0], x[1],
                  x[2], grid.weights[i], grid.deltas[i]);
    out << line;
  }
}

}  // namespace nlg
