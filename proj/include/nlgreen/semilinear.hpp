#ifndef NLGREEN_SEMILINEAR_HPP
#define NLGREEN_SEMILINEAR_HPP

#include <memory>
#include <optional>

#include "nlgreen/greenop.hpp"
#include "nlgreen/measure.hpp"
#include "nlgreen/types.hpp"

namespace nlg {

struct SemilinearProblem {
  const DiscreteGreenOperator* gop = nullptr;
  double p = 2.0;
  double lambda = 0.0;
  WeightedMeasure mu;           // normalized in M(Omega, delta^gamma)
  double tol = 1e-10;
  int max_iter = 50000;
  double divergence_cap = 0.0;  // 0 = auto: max(1e3, 1e3 * T * max G[mu])

  void validate() const;  // throws ValidationError
};

enum class SolveStatus { Converged, Diverged, MaxIter };

std::string status_name(SolveStatus status);

struct SolveReport {
  Vec u;
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double residual = 0.0;
  bool sandwich_ok = false;
  double bound_constant = 0.0;
};

/// Smallest positive root T of t = c_p t^p + lambda, or nullopt when lambda
/// exceeds k(t0) = t0 - c_p t0^p at t0 = (p c_p)^(1/(1-p)).
std::optional<double> supersolution_scale(double p, double c_p, double lambda);

/// Empirical best constant max_i G[(G mu)^q]_i / (G mu)_i. The weighted-space
/// estimate guarantees a refinement-stable value only for q < p*; larger q is
/// accepted and the constant is whatever the grid yields.
double self_improve_constant(const DiscreteGreenOperator& gop, const WeightedMeasure& mu,
                             double q);

/// Monotone iteration u_0 = lambda G[mu], u_{n+1} = G[u_n^p] + lambda G[mu].
SolveReport minimal_solution(const SemilinearProblem& problem);

/// lambda_tilde = (int G[phi1] dmu)^(-1) lambda1^(p/(p-1)) int G[phi1] dx.
double lambda_upper_bound(const DiscreteGreenOperator& gop, const WeightedMeasure& mu,
                          double p, double lambda1, const Vec& phi1);

/// Bisection for the discrete extremal parameter. Requires convergence at lo
/// and non-convergence at hi; stops when the bracket width is below 1e-3 * hi.
double lambda_star(const SemilinearProblem& tmpl, double lo, double hi);

/// Max-norm of u - G[u^p] - lambda G[mu].
double solution_residual(const SemilinearProblem& problem, const Vec& u);

struct BoundsCheck {
  bool lower_ok = false;
  double bound_constant = 0.0;
};

BoundsCheck check_solution_bounds(const Vec& u, const DiscreteGreenOperator& gop,
                                  const WeightedMeasure& mu, double lambda);

// --- mountain-pass machinery -------------------------------------------------

/// h(a,b) = (a + b+)^p - a^p and H(a,b) = int_0^b h(a,t) dt.
double hinge_h(double a, double b, double p);
double hinge_H(double a, double b, double p);

/// Discrete H(Omega)-geometry built on the operator matrix: <u,v>_H = u^T A^{-1} v,
/// realized with a cached dense LU factorization.
class HilbertGeometry {
 public:
  explicit HilbertGeometry(const DiscreteGreenOperator& gop);
  double inner(const Vec& u, const Vec& v) const;
  double norm(const Vec& v) const;
  Vec apply_inverse(const Vec& v) const;  // A^{-1} v

 private:
  const DiscreteGreenOperator* gop_;
  std::shared_ptr<Eigen::PartialPivLU<Mat>> lu_;
};

/// J(v) = 1/2 ||v||_H^2 - sum_i H(u_min_i, v_i) w_i.
double mp_functional(const HilbertGeometry& geom, const DiscreteGreenOperator& gop,
                     const Vec& u_min, double p, const Vec& v);

/// H-gradient of J at v: v - G[h(u_min, v)].
Vec mp_gradient(const DiscreteGreenOperator& gop, const Vec& u_min, double p, const Vec& v);

struct SecondSolution {
  SolveReport report;  // report.u is the second solution u_min + v
  Vec v;               // the mountain-pass increment, positive at every node
  double level = 0.0;  // J(v)
  double grad_norm = 0.0;
};

/// Mountain-pass second solution above a stable minimal solution:
/// discretized-path maximization with descent on the max point, then a Newton
/// polish of the critical-point equation v = G[h(u_min, v)].
SecondSolution second_solution(const SemilinearProblem& problem, const Vec& u_min);

}  // namespace nlg

#endif
