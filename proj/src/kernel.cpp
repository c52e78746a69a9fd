#include "nlgreen/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nlgreen/quadrature.hpp"

namespace nlg {

void validate_kernel_params(const KernelParams& params) {
  if (!(params.s > 0.0 && params.s <= 1.0))
    throw ValidationError("(K2): s must lie in (0, 1]");
  if (!(params.gamma > 0.0 && params.gamma <= 1.0))
    throw ValidationError("(K2): gamma must lie in (0, 1]");
  if (!(params.N > 2.0 * params.s))
    throw ValidationError("(K2): N > 2s is required");
  if (!(params.gamma >= params.s - 0.5))
    throw ValidationError("(K2): gamma >= s - 1/2 is required");
}

std::string family_name(KernelFamily family) {
  return family == KernelFamily::RFL ? "rfl" : "sfl";
}

GreenKernel GreenKernel::rfl(const Domain& domain, double s) {
  GreenKernel k;
  k.family = KernelFamily::RFL;
  k.domain = domain;
  k.params = {s, s, domain.dim};  // RFL forces gamma = s
  validate_kernel_params(k.params);
  return k;
}

GreenKernel GreenKernel::sfl(const Domain& domain, double s, int truncation) {
  if (domain.kind != DomainKind::Interval)
    throw ValidationError("SFL eigen-series is available on intervals only");
  if (truncation < 1) throw ValidationError("SFL truncation must be >= 1");
  GreenKernel k;
  k.family = KernelFamily::SFL;
  k.domain = domain;
  k.params = {s, 1.0, domain.dim};  // SFL forces gamma = 1
  k.sfl_truncation = truncation;
  validate_kernel_params(k.params);
  return k;
}

double GreenKernel::eval(const Point& x, const Point& y) const {
  if (family == KernelFamily::RFL) return green_rfl_ball(x, y, params, domain);
  return green_sfl(x[0], y[0], params, domain, sfl_truncation);
}

double GreenKernel::eval1d(double x, double y) const {
  return eval(point1d(x), point1d(y));
}

double comparison_kernel_raw(double dist, double delta_x, double delta_y,
                             const KernelParams& params) {
  if (!(dist > 0.0)) throw std::domain_error("comparison kernel is singular at x = y");
  const double cx = std::min(delta_x / dist, 1.0);
  const double cy = std::min(delta_y / dist, 1.0);
  return std::pow(dist, 2.0 * params.s - params.N) *
         std::pow(cx * cy, params.gamma);
}

double comparison_kernel(const Point& x, const Point& y, const KernelParams& params,
                         const Domain& domain) {
  double d2 = 0.0;
  for (int k = 0; k < domain.dim; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
  return comparison_kernel_raw(std::sqrt(d2), boundary_distance(domain, x),
                               boundary_distance(domain, y), params);
}

namespace {

// int_0^rho t^(s-1) (1+t)^(-N/2) dt, smooth after substituting away the
// endpoint singularities. For rho > 1 the complete integral is the Beta
// function B(s, N/2 - s) and the tail is transformed to a finite interval.
double rfl_profile(double rho, double s, double N) {
  if (rho <= 0.0) return 0.0;
  if (rho <= 1.0) {
    const double scale = std::pow(rho, s) / s;
    return scale * integrate_gk15(
                       [rho, s, N](double u) {
                         return std::pow(1.0 + rho * std::pow(u, 1.0 / s), -0.5 * N);
                       },
                       0.0, 1.0);
  }
  const double beta = 0.5 * N - s;
  const double complete =
      std::exp(std::lgamma(s) + std::lgamma(beta) - std::lgamma(0.5 * N));
  const double vmax = 1.0 / rho;
  const double tail =
      std::pow(vmax, beta) / beta *
      integrate_gk15(
          [vmax, beta, N](double u) {
            return std::pow(1.0 + vmax * std::pow(u, 1.0 / beta), -0.5 * N);
          },
          0.0, 1.0);
  return complete - tail;
}

}  // namespace

double green_rfl_ball(const Point& x, const Point& y, const KernelParams& params,
                      const Domain& domain) {
  if (domain.kind != DomainKind::Ball && domain.kind != DomainKind::Interval)
    throw ValidationError("green_rfl_ball supports balls and intervals only");
  Point c = domain.center;
  double R = domain.radius;
  if (domain.kind == DomainKind::Interval) {
    c = point1d(0.5 * (domain.a + domain.b));
    R = 0.5 * (domain.b - domain.a);
  }
  const int N = domain.dim;
  double d2 = 0.0, xh2 = 0.0, yh2 = 0.0;
  for (int k = 0; k < N; ++k) {
    d2 += (x[k] - y[k]) * (x[k] - y[k]);
    xh2 += (x[k] - c[k]) * (x[k] - c[k]);
    yh2 += (y[k] - c[k]) * (y[k] - c[k]);
  }
  if (!(d2 > 0.0)) throw std::domain_error("Green kernel is singular at x = y");
  xh2 /= R * R;
  yh2 /= R * R;
  const double dist = std::sqrt(d2);
  const double rho = (1.0 - xh2) * (1.0 - yh2) / (d2 / (R * R));
  const double s = params.s;
  const double kappa =
      std::exp(std::lgamma(0.5 * N) - 0.5 * N * std::log(std::numbers::pi) -
               2.0 * std::lgamma(s)) /
      std::pow(4.0, s);
  return kappa * std::pow(dist, 2.0 * s - N) * rfl_profile(rho, s, N);
}

double green_sfl(double x, double y, const KernelParams& params, const Domain& domain,
                 int truncation) {
  if (domain.kind != DomainKind::Interval)
    throw ValidationError("green_sfl supports interval domains only");
  if (truncation < 1) throw ValidationError("green_sfl requires truncation >= 1");
  const double L = domain.b - domain.a;
  const double xr = (x - domain.a) / L;
  const double yr = (y - domain.a) / L;
  const double base = std::numbers::pi / L;
  // Kahan-compensated partial sum of sum_k (k pi / L)^(-2s) phi_k(x) phi_k(y).
  double sum = 0.0, comp = 0.0;
  for (int k = 1; k <= truncation; ++k) {
    const double lam = std::pow(k * base, -2.0 * params.s);
    const double term = lam * (2.0 / L) * std::sin(k * std::numbers::pi * xr) *
                        std::sin(k * std::numbers::pi * yr);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double boundary_weight(const Point& x, const KernelParams& params, const Domain& domain) {
  const double delta = boundary_distance(domain, x);
  const double expo = 2.0 * params.s - params.gamma - 1.0;
  if (params.gamma == params.s - 0.5)
    return std::pow(delta, expo) * (1.0 + std::abs(std::log(delta)));
  return std::pow(delta, expo);
}

double critical_exponent(const KernelParams& params) {
  return (params.N + params.gamma) / (params.N + params.gamma - 2.0 * params.s);
}

double marcinkiewicz_exponent(const KernelParams& params, double alpha) {
  if (!(alpha > params.gamma - 2.0 * params.s))
    throw std::out_of_range("marcinkiewicz_exponent requires alpha > gamma - 2s");
  return (params.N + alpha) / (params.N + params.gamma - 2.0 * params.s);
}

double dimension_threshold(const KernelParams& params) {
  if (params.gamma < 2.0 * params.s) return 4.0 * params.s;
  return 4.0 * params.s * (1.0 + params.gamma) - params.gamma;
}

ScanResult kernel_estimate_scan(const GreenKernel& kernel, const Grid& grid) {
  ScanResult scan{std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  const int n = grid.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point& xi = grid.nodes[static_cast<std::size_t>(i)];
      const Point& xj = grid.nodes[static_cast<std::size_t>(j)];
      const double g = kernel.eval(xi, xj);
      const double k = comparison_kernel(xi, xj, kernel.params, kernel.domain);
      const double ratio = g / k;
      scan.c_lower = std::min(scan.c_lower, ratio);
      scan.c_upper = std::max(scan.c_upper, ratio);
    }
  }
  if (!std::isfinite(scan.c_lower) || !std::isfinite(scan.c_upper))
    throw NumericError("kernel_estimate_scan produced non-finite ratios");
  return scan;
}

}  // namespace nlg
