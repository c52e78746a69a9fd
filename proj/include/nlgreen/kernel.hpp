#ifndef NLGREEN_KERNEL_HPP
#define NLGREEN_KERNEL_HPP

#include <string>

#include "nlgreen/domain.hpp"
#include "nlgreen/types.hpp"

namespace nlg {

/// Operator parameters: order s, boundary exponent gamma, dimension N.
struct KernelParams {
  double s = 0.25;
  double gamma = 0.25;
  int N = 1;
};

/// Enforces the standing assumptions on (s, gamma, N): s, gamma in (0, 1],
/// N > 2s and gamma >= s - 1/2. Throws ValidationError naming the violated
/// assumption.
void validate_kernel_params(const KernelParams& params);

enum class KernelFamily { RFL, SFL };

std::string family_name(KernelFamily family);

/// An evaluable Green kernel instance. RFL fixes gamma = s, SFL fixes
/// gamma = 1; both are validated at construction.
struct GreenKernel {
  KernelFamily family = KernelFamily::RFL;
  Domain domain;
  KernelParams params;
  int sfl_truncation = 2000;

  static GreenKernel rfl(const Domain& domain, double s);
  static GreenKernel sfl(const Domain& domain, double s, int truncation = 2000);

  double eval(const Point& x, const Point& y) const;
  double eval1d(double x, double y) const;
};

/// The two-sided comparison kernel
///   K(x,y) = |x-y|^(2s-N) (delta(x)/|x-y| ^ 1)^gamma (delta(y)/|x-y| ^ 1)^gamma
/// expressed through the three lengths it depends on.
double comparison_kernel_raw(double dist, double delta_x, double delta_y,
                             const KernelParams& params);
double comparison_kernel(const Point& x, const Point& y, const KernelParams& params,
                         const Domain& domain);

/// Closed-form Green function of the restricted fractional Laplacian on a ball
/// (the interval counts as a 1-ball). Throws on x = y and on non-ball domains.
double green_rfl_ball(const Point& x, const Point& y, const KernelParams& params,
                      const Domain& domain);

/// Spectral-fractional-Laplacian kernel on an interval as a truncated
/// eigen-series with compensated summation.
double green_sfl(double x, double y, const KernelParams& params, const Domain& domain,
                 int truncation);

/// Boundary normalization weight W = delta^(2s-gamma-1), with the log-corrected
/// branch at gamma = s - 1/2.
double boundary_weight(const Point& x, const KernelParams& params, const Domain& domain);

/// p* = (N+gamma)/(N+gamma-2s).
double critical_exponent(const KernelParams& params);

/// p_{gamma,alpha} = (N+alpha)/(N+gamma-2s); requires alpha > gamma - 2s.
double marcinkiewicz_exponent(const KernelParams& params, double alpha);

/// N_{s,gamma} = 4s for gamma < 2s, else 4s(1+gamma) - gamma.
double dimension_threshold(const KernelParams& params);

struct ScanResult {
  double c_lower = 0.0;
  double c_upper = 0.0;
};

/// Min and max of G(x_i,x_j)/K(x_i,x_j) over all off-diagonal node pairs.
ScanResult kernel_estimate_scan(const GreenKernel& kernel, const Grid& grid);

}  // namespace nlg

#endif
