#ifndef NLGREEN_GREENOP_HPP
#define NLGREEN_GREENOP_HPP

#include <iosfwd>

#include "nlgreen/domain.hpp"
#include "nlgreen/kernel.hpp"
#include "nlgreen/measure.hpp"
#include "nlgreen/types.hpp"

namespace nlg {

/// Nystrom discretization of the Green operator. Entry A_ij holds the kernel
/// value per unit weight, so (Af)_i = sum_j A_ij w_j f_j. Diagonal entries
/// carry the singularity-fitted cell average.
struct DiscreteGreenOperator {
  Mat matrix;
  Grid grid;
  GreenKernel kernel;

  int size() const { return static_cast<int>(matrix.rows()); }

  /// (G f)_i = sum_j A_ij w_j f_j, fixed left-to-right summation per row.
  Vec apply(const Vec& f) const;

  /// G[mu]_i = sum_k G(x_i, y_k) m_k + (apply on the density part)_i.
  /// Atoms landing exactly on a node are nudged toward the domain center.
  Vec apply_measure(const WeightedMeasure& mu) const;
};

DiscreteGreenOperator assemble(const GreenKernel& kernel, const Grid& grid);

/// (sum_i |u_i|^p delta_i^alpha w_i)^(1/p), p >= 1.
double weighted_lp_norm(const Vec& u, const Grid& grid, double p, double alpha);

/// sup over data-value thresholds t of t * (weighted measure of {|u| >= t})^(1/q).
double marcinkiewicz_norm(const Vec& u, const Grid& grid, double q, double alpha);

/// (1/eps) * sum_{delta(x_i) < eps} (u_i / W(x_i)) w_i.
double trace_quotient(const Vec& u, const GreenKernel& kernel, const Grid& grid,
                      double epsilon);

/// Dense binary dump: header {n, family, s, gamma} then row-major doubles.
void dump_operator(const DiscreteGreenOperator& gop, std::ostream& out);
DiscreteGreenOperator load_operator_matrix(std::istream& in);

}  // namespace nlg

#endif
