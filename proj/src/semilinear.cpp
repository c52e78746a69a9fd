#include "nlgreen/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nlgreen/spectral.hpp"

namespace nlg {

void SemilinearProblem::validate() const {
  if (gop == nullptr) throw ValidationError("problem has no operator");
  if (!(p > 1.0)) throw ValidationError("problem requires p > 1");
  if (lambda < 0.0) throw ValidationError("problem requires lambda >= 0");
  if (!mu.is_nonnegative())
    throw ValidationError("the semilinear solver requires a nonnegative measure");
  const double norm = weighted_norm(mu, gop->kernel.params.gamma, gop->grid);
  if (std::abs(norm - 1.0) > 1e-10)
    throw ValidationError("measure must be normalized in M(Omega, delta^gamma)");
}

std::string status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::Diverged: return "diverged";
    default: return "max_iter";
  }
}

std::optional<double> supersolution_scale(double p, double c_p, double lambda) {
  if (!(p > 1.0 && c_p > 0.0 && lambda > 0.0))
    throw ValidationError("supersolution_scale requires p > 1, c_p > 0, lambda > 0");
  const double t0 = std::pow(p * c_p, 1.0 / (1.0 - p));
  const double k0 = t0 - c_p * std::pow(t0, p);
  if (lambda > k0) return std::nullopt;
  double lo = 0.0, hi = t0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (c_p * std::pow(mid, p) + lambda > mid)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double self_improve_constant(const DiscreteGreenOperator& gop, const WeightedMeasure& mu,
                             double q) {
  if (!(q >= 1.0)) throw std::out_of_range("self_improve_constant requires q >= 1");
  const Vec gmu = gop.apply_measure(mu);
  if (!(gmu.minCoeff() > 0.0))
    throw NumericError("self_improve_constant: G[mu] is not positive");
  Vec gmu_q(gmu.size());
  for (Eigen::Index i = 0; i < gmu.size(); ++i) gmu_q[i] = std::pow(gmu[i], q);
  const Vec iterated = gop.apply(gmu_q);
  double best = 0.0;
  for (Eigen::Index i = 0; i < gmu.size(); ++i)
    best = std::max(best, iterated[i] / gmu[i]);
  return best;
}

SolveReport minimal_solution(const SemilinearProblem& problem) {
  problem.validate();
  const DiscreteGreenOperator& gop = *problem.gop;
  SolveReport report;
  const Vec source = gop.apply_measure(problem.mu);
  if (problem.lambda == 0.0) {
    report.u = Vec::Zero(gop.size());
    report.status = SolveStatus::Converged;
    report.iterations = 1;
    report.residual = 0.0;
    report.sandwich_ok = true;
    report.bound_constant = 0.0;
    return report;
  }
  const double c_p = self_improve_constant(gop, problem.mu, problem.p);
  const std::optional<double> T = supersolution_scale(problem.p, c_p, problem.lambda);
  double cap = problem.divergence_cap;
  if (cap <= 0.0) {
    cap = 1e3;
    if (T) cap = std::max(cap, 1e3 * *T * source.maxCoeff());
  }
  Vec u = problem.lambda * source;
  Vec powered(u.size());
  for (int it = 1; it <= problem.max_iter; ++it) {
    for (Eigen::Index i = 0; i < u.size(); ++i)
      powered[i] = std::pow(u[i], problem.p);
    Vec next = gop.apply(powered) + problem.lambda * source;
    const double inc = (next - u).cwiseAbs().maxCoeff();
    u.swap(next);
    report.iterations = it;
    if (u.maxCoeff() > cap) {
      report.status = SolveStatus::Diverged;
      report.u = u;
      report.residual = solution_residual(problem, u);
      return report;
    }
    if (inc / (1.0 + u.maxCoeff()) < problem.tol && inc < problem.tol) {
      report.status = SolveStatus::Converged;
      break;
    }
    report.status = SolveStatus::MaxIter;
  }
  report.u = u;
  report.residual = solution_residual(problem, u);
  if (report.status == SolveStatus::Converged) {
    bool lower = true, upper = true;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u[i] < problem.lambda * source[i] - 1e-8) lower = false;
      if (T && u[i] > *T * source[i] + 1e-8) upper = false;
    }
    report.sandwich_ok = lower && upper;
    report.bound_constant =
        check_solution_bounds(u, gop, problem.mu, problem.lambda).bound_constant;
  }
  return report;
}

double lambda_upper_bound(const DiscreteGreenOperator& gop, const WeightedMeasure& mu,
                          double p, double lambda1, const Vec& phi1) {
  if (!(lambda1 > 0.0) || phi1.minCoeff() <= 0.0)
    throw ValidationError("lambda_upper_bound needs the positive first eigenpair");
  const Vec gphi = gop.apply(phi1);
  double volume_part = 0.0;
  for (Eigen::Index i = 0; i < gphi.size(); ++i)
    volume_part += gphi[i] * gop.grid.weights[i];
  // int G[phi1] dmu: kernel evaluation at the atoms plus the density pairing
  double mu_part = 0.0;
  for (const Atom& atom : mu.atoms) {
    double at_y = 0.0;
    for (Eigen::Index j = 0; j < gphi.size(); ++j)
      at_y += gop.kernel.eval(atom.x, gop.grid.nodes[static_cast<std::size_t>(j)]) *
              gop.grid.weights[j] * phi1[j];
    mu_part += at_y * atom.mass;
  }
  if (mu.has_density())
    for (Eigen::Index i = 0; i < gphi.size(); ++i)
      mu_part += gphi[i] * mu.density[i] * gop.grid.weights[i];
  if (!(mu_part > 0.0)) throw NumericError("lambda_upper_bound: int G[phi1] dmu <= 0");
  return std::pow(lambda1, p / (p - 1.0)) * volume_part / mu_part;
}

double lambda_star(const SemilinearProblem& tmpl, double lo, double hi) {
  if (!(0.0 <= lo && lo < hi)) throw ValidationError("lambda_star: invalid bracket");
  SemilinearProblem probe = tmpl;
  probe.lambda = lo;
  if (lo > 0.0 && minimal_solution(probe).status != SolveStatus::Converged)
    throw ValidationError("lambda_star: solve does not converge at the lower bracket");
  probe.lambda = hi;
  if (minimal_solution(probe).status == SolveStatus::Converged)
    throw ValidationError("lambda_star: solve converges at the upper bracket");
  while (hi - lo > 1e-3 * hi) {
    probe.lambda = 0.5 * (lo + hi);
    if (minimal_solution(probe).status == SolveStatus::Converged)
      lo = probe.lambda;
    else
      hi = probe.lambda;
  }
  return 0.5 * (lo + hi);
}

double solution_residual(const SemilinearProblem& problem, const Vec& u) {
  const DiscreteGreenOperator& gop = *problem.gop;
  Vec powered(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    powered[i] = std::pow(std::max(u[i], 0.0), problem.p);
  const Vec rhs = gop.apply(powered) + problem.lambda * gop.apply_measure(problem.mu);
  return (u - rhs).cwiseAbs().maxCoeff();
}

BoundsCheck check_solution_bounds(const Vec& u, const DiscreteGreenOperator& gop,
                                  const WeightedMeasure& mu, double lambda) {
  const Vec gmu = gop.apply_measure(mu);
  BoundsCheck out;
  out.lower_ok = true;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] < lambda * gmu[i] - 1e-8) out.lower_ok = false;
    out.bound_constant = std::max(out.bound_constant, u[i] / (gmu[i] + 1.0));
  }
  return out;
}

// --- mountain pass ------------------------------------------------------------

double hinge_h(double a, double b, double p) {
  const double bp = std::max(b, 0.0);
  return std::pow(a + bp, p) - std::pow(a, p);
}

double hinge_H(double a, double b, double p) {
  const double bp = std::max(b, 0.0);
  return (std::pow(a + bp, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0) -
         std::pow(a, p) * bp;
}

HilbertGeometry::HilbertGeometry(const DiscreteGreenOperator& gop)
    : gop_(&gop), lu_(std::make_shared<Eigen::PartialPivLU<Mat>>(gop.matrix)) {}

Vec HilbertGeometry::apply_inverse(const Vec& v) const { return lu_->solve(v); }

double HilbertGeometry::inner(const Vec& u, const Vec& v) const {
  return apply_inverse(u).dot(v);
}

double HilbertGeometry::norm(const Vec& v) const {
  return std::sqrt(std::max(inner(v, v), 0.0));
}

double mp_functional(const HilbertGeometry& geom, const DiscreteGreenOperator& gop,
                     const Vec& u_min, double p, const Vec& v) {
  double potential = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    potential += hinge_H(u_min[i], v[i], p) * gop.grid.weights[i];
  return 0.5 * geom.inner(v, v) - potential;
}

Vec mp_gradient(const DiscreteGreenOperator& gop, const Vec& u_min, double p,
                const Vec& v) {
  Vec h(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) h[i] = hinge_h(u_min[i], v[i], p);
  return v - gop.apply(h);
}

namespace {

constexpr int kPathPoints = 41;
constexpr double kGradTol = 1e-6;
constexpr int kMaxSweeps = 2000;

// Equal-arclength re-sampling of the polyline; endpoints are preserved.
std::vector<Vec> resample_path(const std::vector<Vec>& path) {
  const std::size_t m = path.size();
  std::vector<double> cum(m, 0.0);
  for (std::size_t j = 1; j < m; ++j)
    cum[j] = cum[j - 1] + (path[j] - path[j - 1]).norm();
  if (cum.back() == 0.0) return path;
  std::vector<Vec> out;
  out.reserve(m);
  std::size_t seg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double target = cum.back() * static_cast<double>(j) / (m - 1);
    while (seg + 2 < m && cum[seg + 1] < target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double th = len > 0.0 ? (target - cum[seg]) / len : 0.0;
    out.push_back((1.0 - th) * path[seg] + th * path[seg + 1]);
  }
  out.front() = path.front();
  out.back() = path.back();
  return out;
}

// Damped Newton iteration on the critical-point equation F(v) = v - G[h(u,v)].
bool newton_polish(const DiscreteGreenOperator& gop, const Vec& u_min, double p, Vec& v,
                   double tol, int cap) {
  const Eigen::Index n = v.size();
  for (int it = 0; it < cap; ++it) {
    Vec h(n), slope(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      h[i] = hinge_h(u_min[i], v[i], p);
      slope[i] = v[i] > 0.0 ? p * std::pow(u_min[i] + v[i], p - 1.0) : 0.0;
    }
    const Vec F = v - gop.apply(h);
    if (F.cwiseAbs().maxCoeff() < tol) return true;
    Mat jac = Mat::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        jac(i, j) -= gop.matrix(i, j) * gop.grid.weights[j] * slope[j];
    const Vec dv = jac.partialPivLu().solve(F);
    if (!dv.allFinite()) return false;
    double step = 1.0;
    const double limit = 10.0 * (1.0 + v.cwiseAbs().maxCoeff());
    if (dv.cwiseAbs().maxCoeff() > limit) step = limit / dv.cwiseAbs().maxCoeff();
    v -= step * dv;
  }
  Vec h(n);
  for (Eigen::Index i = 0; i < n; ++i) h[i] = hinge_h(u_min[i], v[i], p);
  return (v - gop.apply(h)).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

SecondSolution second_solution(const SemilinearProblem& problem, const Vec& u_min) {
  problem.validate();
  const DiscreteGreenOperator& gop = *problem.gop;
  const double p = problem.p;
  const double sigma = stability_index(gop, u_min, p);
  if (!(sigma > 1.0 + 1e-3))
    throw ValidationError("second_solution requires a stable minimal solution");
  const HilbertGeometry geom(gop);
  auto J = [&](const Vec& v) { return mp_functional(geom, gop, u_min, p, v); };

  // Ray direction: the twice-smoothed source. For atomic measures G[mu] is a
  // grid-scale spike whose ray meets {J < 0} only at useless scales; one more
  // application of G keeps the same cone with sane magnitudes.
  const Vec gmu = gop.apply_measure(problem.mu);
  Vec ray = gop.apply(gmu);
  ray /= ray.maxCoeff();

  double t_big = 1.0;
  while (J(t_big * ray) >= 0.0) {
    t_big *= 2.0;
    if (t_big > 1e12)
      throw NumericError("second_solution: no J < 0 endpoint along the search ray");
  }

  // Discretized-path stage: maximize over the path, descend at the max point,
  // re-sample the polyline to keep the crossing covered.
  std::vector<Vec> path;
  path.reserve(kPathPoints);
  for (int j = 0; j < kPathPoints; ++j)
    path.push_back(t_big * static_cast<double>(j) / (kPathPoints - 1) * ray);
  Vec best = path[1];
  double grad_norm = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    int k = 0;
    double jmax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kPathPoints; ++j) {
      const double val = J(path[static_cast<std::size_t>(j)]);
      if (val > jmax) {
        jmax = val;
        k = j;
      }
    }
    Vec& vk = path[static_cast<std::size_t>(k)];
    const Vec g = mp_gradient(gop, u_min, p, vk);
    grad_norm = geom.norm(g);
    if (k != 0 && k != kPathPoints - 1 && jmax > 0.0) best = vk;
    if (grad_norm < kGradTol && k != 0 && k != kPathPoints - 1 && jmax > 0.0) break;
    if (grad_norm < 1e-3 && jmax > 0.0 && k != 0 && k != kPathPoints - 1)
      break;  // close enough for the Newton stage
    double alpha = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      if (J(vk - alpha * g) < jmax - 1e-4 * alpha * grad_norm * grad_norm) break;
      alpha *= 0.5;
    }
    vk -= alpha * g;
    path = resample_path(path);
  }

  Vec v = best;
  bool ok = newton_polish(gop, u_min, p, v, 1e-12, 80);
  const bool nontrivial = [&] {
    if (!ok) return false;
    double vmax = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) vmax = std::max(vmax, v[i]);
    return vmax > 10.0 * problem.tol && J(v) > 0.0 && v.minCoeff() > -1e-10;
  }();
  if (!nontrivial) {
    // deterministic seed ladder along the smoothed ray
    bool found = false;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0}) {
      v = t * ray;
      if (!newton_polish(gop, u_min, p, v, 1e-12, 80)) continue;
      double vmax = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) vmax = std::max(vmax, v[i]);
      if (vmax > 10.0 * problem.tol && J(v) > 0.0 && v.minCoeff() > -1e-10) {
        found = true;
        break;
      }
    }
    if (!found)
      throw NumericError("second_solution: mountain-pass search found no "
                         "nontrivial critical point");
  }

  SecondSolution out;
  out.v = v.cwiseMax(0.0);
  out.level = J(v);
  out.grad_norm = geom.norm(mp_gradient(gop, u_min, p, v));
  out.report.u = u_min + out.v;
  out.report.status = SolveStatus::Converged;
  out.report.iterations = 0;
  out.report.residual = solution_residual(problem, out.report.u);
  const BoundsCheck bounds =
      check_solution_bounds(out.report.u, gop, problem.mu, problem.lambda);
  out.report.sandwich_ok = bounds.lower_ok;
  out.report.bound_constant = bounds.bound_constant;
  return out;
}

}  // namespace nlg
