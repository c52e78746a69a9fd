#ifndef NLGREEN_DOMAIN_HPP
#define NLGREEN_DOMAIN_HPP

#include <iosfwd>
#include <vector>

#include "nlgreen/types.hpp"

namespace nlg {

enum class DomainKind { Interval, Ball };

/// Model domain: a 1D interval (a, b) or an N-ball, N in {1, 2, 3}.
struct Domain {
  DomainKind kind = DomainKind::Interval;
  int dim = 1;
  double a = 0.0, b = 1.0;  // interval bounds
  Point center{};           // ball center
  double radius = 0.0;      // ball radius

  static Domain interval(double a, double b);
  static Domain ball(const Point& center, double radius, int dim);

  double volume() const;
  double diameter() const;
  bool contains(const Point& x) const;  // strict interior
};

/// Distance from an interior point to the boundary. Throws std::domain_error
/// for points on or outside the boundary.
double boundary_distance(const Domain& domain, const Point& x);
double boundary_distance(const Domain& domain, double x);  // 1D shortcut

/// The 1D grading map: cell boundaries at phi(i/n) with
/// phi(t) = (1 - (1-2t)^g)/2 for t <= 1/2 and the sign-preserving mirror above.
double graded_map(double t, double grading);

/// Quadrature grid: interior nodes, positive weights summing to |domain|,
/// boundary distances, and (1D) the cell edges.
struct Grid {
  Domain domain;
  std::vector<Point> nodes;
  Vec weights;
  Vec deltas;
  double grading = 1.0;
  std::vector<double> edges;  // 1D only; n+1 cell boundaries

  int size() const { return static_cast<int>(nodes.size()); }
  double node1d(int i) const { return nodes[static_cast<std::size_t>(i)][0]; }
  bool is_interval() const { return domain.kind == DomainKind::Interval; }
};

/// Composite-midpoint grid with graded cells. 1D grids get the mirrored
/// grading map; balls get a polar/spherical tensor grid with the radial
/// grading and equal-angle rules. Deterministic for fixed (n, grading).
Grid make_graded_grid(const Domain& domain, int n, double grading);

/// CSV serialization, columns: index, coordinates, weight, delta.
void write_grid_csv(const Grid& grid, std::ostream& out);

}  // namespace nlg

#endif
