#include "nlgreen/verify.hpp"

#include <cmath>
#include <vector>

#include "nlgreen/rng.hpp"

namespace nlg {
namespace {

struct QuadPoint {
  double x, weight;
};

// Quadrature points for the probe integrals: plain midpoint nodes, with each
// cell within 3 cells of the atom split 4x. The integrand peaks like
// |x-y|^((2s-N-gamma)q) there, which uniform cells under-resolve.
std::vector<QuadPoint> refined_points(const Grid& grid, double y, bool refine) {
  std::vector<QuadPoint> pts;
  const int n = grid.size();
  pts.reserve(static_cast<std::size_t>(n) + 24);
  int iy = 0;
  for (int i = 0; i < n; ++i)
    if (grid.edges[static_cast<std::size_t>(i)] <= y &&
        y <= grid.edges[static_cast<std::size_t>(i) + 1])
      iy = i;
  for (int i = 0; i < n; ++i) {
    if (refine && std::abs(i - iy) <= 3) {
      const double lo = grid.edges[static_cast<std::size_t>(i)];
      const double hi = grid.edges[static_cast<std::size_t>(i) + 1];
      const double h = (hi - lo) / 4.0;
      for (int k = 0; k < 4; ++k) pts.push_back({lo + (k + 0.5) * h, h});
    } else {
      pts.push_back({grid.node1d(i), grid.weights[i]});
    }
  }
  return pts;
}

}  // namespace

std::vector<double> check_marcinkiewicz_uniform(const GreenKernel& kernel,
                                                const Grid& grid, double q, double alpha,
                                                const std::vector<double>& probe_points,
                                                bool refine) {
  if (!(q >= 1.0)) throw ValidationError("check_marcinkiewicz_uniform requires q >= 1");
  if (!grid.is_interval())
    throw ValidationError("marcinkiewicz probes run on interval grids only");
  const Domain& domain = grid.domain;
  std::vector<double> values;
  values.reserve(probe_points.size());
  for (double y : probe_points) {
    const double dy_gamma =
        std::pow(boundary_distance(domain, y), kernel.params.gamma);
    double acc = 0.0;
    for (const QuadPoint& pt : refined_points(grid, y, refine)) {
      if (pt.x == y) continue;
      const double g = kernel.eval1d(pt.x, y);
      acc += std::pow(g / dy_gamma, q) *
             std::pow(boundary_distance(domain, pt.x), alpha) * pt.weight;
    }
    values.push_back(acc);
  }
  return values;
}

double check_3g(const GreenKernel& kernel, const Grid& grid, int samples,
                std::uint64_t seed) {
  if (samples < 100) throw ValidationError("check_3g requires samples >= 100");
  UniformRng rng(seed);
  double min_sep = 0.0;
  if (grid.is_interval()) {
    for (std::size_t i = 0; i + 1 < grid.edges.size(); ++i)
      min_sep = std::max(min_sep, grid.edges[i + 1] - grid.edges[i]);
  } else {
    min_sep = grid.domain.diameter() / std::cbrt(static_cast<double>(grid.size()));
  }
  const Domain& domain = grid.domain;
  const double sing = 2.0 * kernel.params.s - kernel.params.N;
  double worst = 0.0;
  int accepted = 0;
  while (accepted < samples) {
    const double x = rng.uniform(domain.a, domain.b);
    const double y = rng.uniform(domain.a, domain.b);
    const double z = rng.uniform(domain.a, domain.b);
    const double dxy = std::abs(x - y), dyz = std::abs(y - z), dxz = std::abs(x - z);
    if (std::min({dxy, dyz, dxz}) < min_sep) continue;
    ++accepted;
    const double quotient =
        kernel.eval1d(x, y) * kernel.eval1d(y, z) / kernel.eval1d(x, z);
    const double bound = std::pow(dxy, sing) + std::pow(dyz, sing);
    worst = std::max(worst, quotient / bound);
  }
  if (!std::isfinite(worst)) throw NumericError("check_3g produced a non-finite constant");
  return worst;
}

std::vector<NonexistenceRow> nonexistence_probe(const DiscreteGreenOperator& gop,
                                                double p, double lambda,
                                                double boundary_point,
                                                const std::vector<double>& delta_sequence) {
  const Grid& grid = gop.grid;
  if (!grid.is_interval())
    throw ValidationError("nonexistence_probe runs on interval grids only");
  const Domain& domain = grid.domain;
  const double inward = boundary_point <= 0.5 * (domain.a + domain.b) ? 1.0 : -1.0;
  const double gamma = gop.kernel.params.gamma;
  std::vector<NonexistenceRow> rows;
  rows.reserve(delta_sequence.size());
  for (double dist : delta_sequence) {
    NonexistenceRow row;
    row.delta_y = dist;
    const double y = boundary_point + inward * dist;
    const double mass = std::pow(boundary_distance(domain, y), -gamma);
    // lower-bound integral int (lambda G[mu_n])^p delta^gamma dx
    double acc = 0.0;
    for (const QuadPoint& pt : refined_points(grid, y, true)) {
      if (pt.x == y) continue;
      const double gmu = gop.kernel.eval1d(pt.x, y) * mass;
      acc += std::pow(lambda * gmu, p) *
             std::pow(boundary_distance(domain, pt.x), gamma) * pt.weight;
    }
    row.integral = acc;
    SemilinearProblem problem;
    problem.gop = &gop;
    problem.p = p;
    problem.lambda = lambda;
    problem.mu = boundary_concentrated_dirac(point1d(y), gamma, domain);
    row.status = minimal_solution(problem).status;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nlg
