#ifndef NLGREEN_MEASURE_HPP
#define NLGREEN_MEASURE_HPP

#include <vector>

#include "nlgreen/domain.hpp"
#include "nlgreen/types.hpp"

namespace nlg {

struct Atom {
  Point x{};
  double mass = 0.0;
};

/// Weighted Radon measure: point atoms plus an optional density given by its
/// values at the grid nodes. Negative masses are representable for linear
/// tests; the semilinear solver rejects them.
struct WeightedMeasure {
  std::vector<Atom> atoms;
  Vec density;  // size 0 (absent) or grid size

  bool has_density() const { return density.size() > 0; }
  bool is_nonnegative() const;
  bool is_zero() const;
};

/// ||mu||_{M(Omega, delta^gamma)} = sum_k m_k delta(y_k)^gamma
///                                + sum_i density_i delta(x_i)^gamma w_i.
double weighted_norm(const WeightedMeasure& mu, double gamma, const Grid& grid);

/// Rescales mu to weighted norm 1. Throws ValidationError on the zero measure.
WeightedMeasure normalize(const WeightedMeasure& mu, double gamma, const Grid& grid);

/// The nonexistence-probe family: a single atom at y with mass delta(y)^(-gamma),
/// so the weighted norm is exactly 1.
WeightedMeasure boundary_concentrated_dirac(const Point& y, double gamma,
                                            const Domain& domain);

}  // namespace nlg

#endif
