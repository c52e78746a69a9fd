#ifndef NLGREEN_VERIFY_HPP
#define NLGREEN_VERIFY_HPP

#include <cstdint>
#include <vector>

#include "nlgreen/greenop.hpp"
#include "nlgreen/kernel.hpp"
#include "nlgreen/semilinear.hpp"

namespace nlg {

/// For each probe point y, the quadrature value of
///   int (G(x,y)/delta(y)^gamma)^q delta(x)^alpha dx
/// on the grid, with a locally refined sub-grid (4x within 3 cells) around the
/// probe when `refine` is set. Interval domains only.
std::vector<double> check_marcinkiewicz_uniform(const GreenKernel& kernel,
                                                const Grid& grid, double q, double alpha,
                                                const std::vector<double>& probe_points,
                                                bool refine = true);

/// Worst constant of the 3G inequality over seeded random triples with a
/// one-cell-width minimum separation filter.
double check_3g(const GreenKernel& kernel, const Grid& grid, int samples,
                std::uint64_t seed);

struct NonexistenceRow {
  double delta_y = 0.0;
  double integral = 0.0;  // int (lambda G[mu_n])^p delta^gamma dx
  SolveStatus status = SolveStatus::MaxIter;
};

/// Boundary-Dirac probe: measures mu_n = delta^(-gamma) dirac_{y_n} with y_n at
/// the given distances from the boundary point along the inward normal; reports
/// the lower-bound integral and the solver status for each.
std::vector<NonexistenceRow> nonexistence_probe(const DiscreteGreenOperator& gop,
                                                double p, double lambda,
                                                double boundary_point,
                                                const std::vector<double>& delta_sequence);

}  // namespace nlg

#endif
