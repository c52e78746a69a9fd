#include "nlgreen/measure.hpp"

#include <cmath>

namespace nlg {

bool WeightedMeasure::is_nonnegative() const {
  for (const Atom& a : atoms)
    if (a.mass < 0.0) return false;
  for (Eigen::Index i = 0; i < density.size(); ++i)
    if (density[i] < 0.0) return false;
  return true;
}

bool WeightedMeasure::is_zero() const {
  for (const Atom& a : atoms)
    if (a.mass != 0.0) return false;
  return density.size() == 0 || density.isZero(0.0);
}

double weighted_norm(const WeightedMeasure& mu, double gamma, const Grid& grid) {
  double norm = 0.0;
  for (const Atom& a : mu.atoms)
    norm += std::abs(a.mass) * std::pow(boundary_distance(grid.domain, a.x), gamma);
  if (mu.has_density()) {
    if (mu.density.size() != grid.weights.size())
      throw ValidationError("measure density does not match the grid");
    for (Eigen::Index i = 0; i < mu.density.size(); ++i)
      norm += std::abs(mu.density[i]) * std::pow(grid.deltas[i], gamma) * grid.weights[i];
  }
  return norm;
}

WeightedMeasure normalize(const WeightedMeasure& mu, double gamma, const Grid& grid) {
  const double norm = weighted_norm(mu, gamma, grid);
  if (!(norm > 0.0)) throw ValidationError("cannot normalize the zero measure");
  WeightedMeasure out = mu;
  for (Atom& a : out.atoms) a.mass /= norm;
  if (out.has_density()) out.density /= norm;
  return out;
}

WeightedMeasure boundary_concentrated_dirac(const Point& y, double gamma,
                                            const Domain& domain) {
  WeightedMeasure mu;
  mu.atoms.push_back({y, std::pow(boundary_distance(domain, y), -gamma)});
  return mu;
}

}  // namespace nlg
