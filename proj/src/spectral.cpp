#include "nlgreen/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "nlgreen/rng.hpp"

namespace nlg {
namespace {

constexpr double kStagnationTol = 1e-12;
constexpr int kIterationCap = 100000;

Vec random_start(int n, std::uint64_t seed) {
  UniformRng rng(seed);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = 0.5 + rng.unit();
  return v;
}

// Power iteration for the largest eigenvalue of mul() in the inner product ip.
// `deflate` holds ip-orthonormal eigenvectors of previously found modes.
// Stops on Rayleigh-quotient stagnation combined with a small sup-norm
// fixed-point residual, so returned pairs satisfy the eigenproblem tightly.
template <typename Mul, typename Ip>
std::pair<double, Vec> power_iteration(const Mul& mul, const Ip& ip, Vec v,
                                       const std::vector<Vec>& deflate) {
  double rho = 0.0, rho_old = 0.0;
  for (int it = 0; it < kIterationCap; ++it) {
    for (const Vec& u : deflate) v -= ip(v, u) * u;
    Vec av = mul(v);
    const double vv = ip(v, v);
    if (!(vv > 0.0)) throw NumericError("power iteration collapsed to zero");
    rho = ip(av, v) / vv;
    const double an = std::sqrt(ip(av, av));
    if (!(an > 0.0)) throw NumericError("power iteration produced a null image");
    const double residual =
        (av / rho - v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff();
    v = av / an;
    if (it > 2 && std::abs(rho - rho_old) < kStagnationTol * std::abs(rho) &&
        residual < 1e-9)
      break;
    rho_old = rho;
  }
  for (const Vec& u : deflate) v -= ip(v, u) * u;
  v /= std::sqrt(ip(v, v));
  return {rho, v};
}

}  // namespace

std::vector<EigenPair> base_eigen(const DiscreteGreenOperator& gop, int k) {
  if (k < 1) throw ValidationError("base_eigen requires k >= 1");
  const int n = gop.size();
  const Vec& w = gop.grid.weights;
  auto mul = [&gop](const Vec& v) { return gop.apply(v); };
  auto ip = [&w](const Vec& u, const Vec& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) acc += u[i] * v[i] * w[i];
    return acc;
  };
  std::vector<EigenPair> out;
  std::vector<Vec> deflate;
  for (int j = 0; j < k; ++j) {
    auto [rho, v] = power_iteration(mul, ip, random_start(n, 1000 + static_cast<std::uint64_t>(j)),
                                    deflate);
    if (!(rho > 0.0)) throw NumericError("base_eigen: nonpositive Green eigenvalue");
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    deflate.push_back(v);
    out.push_back({1.0 / rho, v});
  }
  std::sort(out.begin(), out.end(),
            [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
  for (std::size_t j = 1; j < out.size(); ++j)
    if (std::abs(out[j].value - out[j - 1].value) < 1e-10 * out[j].value)
      std::cerr << "base_eigen: near-degenerate eigenvalues " << out[j - 1].value
                << ", " << out[j].value << "\n";
  return out;
}

std::pair<double, Vec> weighted_first_eigenvalue(const DiscreteGreenOperator& gop,
                                                 const Vec& a) {
  if (a.size() != gop.matrix.rows())
    throw ValidationError("weighted_first_eigenvalue: weight size mismatch");
  if (a.isZero(0.0)) throw ValidationError("weighted_first_eigenvalue: weight is zero");
  const Vec& w = gop.grid.weights;
  auto mul = [&gop, &a](const Vec& v) { return gop.apply(a.cwiseProduct(v)); };
  auto ip = [&w, &a](const Vec& u, const Vec& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) acc += u[i] * v[i] * w[i] * a[i];
    return acc;
  };
  auto [rho, v] = power_iteration(mul, ip, random_start(gop.size(), 777), {});
  if (!(rho > 0.0)) throw NumericError("weighted_first_eigenvalue: nonpositive mode");
  v = v.cwiseAbs();
  double norm = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) norm += a[i] * v[i] * v[i] * w[i];
  v /= std::sqrt(norm);
  return {1.0 / rho, v};
}

double stability_index(const DiscreteGreenOperator& gop, const Vec& u, double p) {
  if (u.minCoeff() < 0.0)
    throw ValidationError("stability_index requires a nonnegative solution");
  if (u.isZero(0.0)) return std::numeric_limits<double>::infinity();
  Vec a(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) a[i] = p * std::pow(u[i], p - 1.0);
  return weighted_first_eigenvalue(gop, a).first;
}

}  // namespace nlg
