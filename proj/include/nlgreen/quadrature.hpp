#ifndef NLGREEN_QUADRATURE_HPP
#define NLGREEN_QUADRATURE_HPP

#include <functional>

namespace nlg {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to the given
/// absolute tolerance. Panels with the largest error estimate are bisected first.
double integrate_gk15(const std::function<double(double)>& f, double a, double b,
                      double abs_tol = 1e-12, int max_panels = 2000);

}  // namespace nlg

#endif
