#ifndef NLGREEN_SPECTRAL_HPP
#define NLGREEN_SPECTRAL_HPP

#include <utility>
#include <vector>

#include "nlgreen/greenop.hpp"
#include "nlgreen/types.hpp"

namespace nlg {

struct EigenPair {
  double value = 0.0;  // eigenvalue of the operator L (inverse of the Green op)
  Vec vector;
};

/// First k eigenpairs of L via power iteration with deflation on the discrete
/// Green operator; the first eigenvector is positive, all are L2-normalized in
/// the weighted inner product and returned in increasing eigenvalue order.
std::vector<EigenPair> base_eigen(const DiscreteGreenOperator& gop, int k);

/// First eigenvalue sigma and positive eigenfunction phi of L relative to the
/// weight a >= 0 (fixed-point form phi = sigma G[a phi]); phi is normalized so
/// sum_i a_i phi_i^2 w_i = 1.
std::pair<double, Vec> weighted_first_eigenvalue(const DiscreteGreenOperator& gop,
                                                 const Vec& a);

/// Stability index sigma(lambda): the weighted first eigenvalue with
/// a = p u^(p-1). Returns +infinity for u identically zero.
double stability_index(const DiscreteGreenOperator& gop, const Vec& u, double p);

}  // namespace nlg

#endif
