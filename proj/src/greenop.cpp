#include "nlgreen/greenop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <vector>

namespace nlg {
namespace {

// Analytic integral of |x_i - y|^(2s-N) over cell i, per unit weight. On the
// interval the cell is [eL, eR]; on balls an equal-volume ball around the node.
double diagonal_cell_integral(const Grid& grid, int i, double s) {
  const int N = grid.domain.dim;
  if (grid.is_interval()) {
    const double lo = grid.edges[static_cast<std::size_t>(i)];
    const double hi = grid.edges[static_cast<std::size_t>(i) + 1];
    const double x = grid.node1d(i);
    return (std::pow(x - lo, 2.0 * s) + std::pow(hi - x, 2.0 * s)) / (2.0 * s);
  }
  const double w = grid.weights[i];
  const double unit_ball = std::pow(std::numbers::pi, 0.5 * N) /
                           std::exp(std::lgamma(0.5 * N + 1.0));
  const double r = std::pow(w / unit_ball, 1.0 / N);
  const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * N) /
                        std::exp(std::lgamma(0.5 * N));
  return sphere * std::pow(r, 2.0 * s) / (2.0 * s);
}

}  // namespace

DiscreteGreenOperator assemble(const GreenKernel& kernel, const Grid& grid) {
  const int n = grid.size();
  DiscreteGreenOperator gop;
  gop.grid = grid;
  gop.kernel = kernel;
  gop.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double g = kernel.eval(grid.nodes[static_cast<std::size_t>(i)],
                                   grid.nodes[static_cast<std::size_t>(j)]);
      gop.matrix(i, j) = g;
      gop.matrix(j, i) = g;
    }
  }
  // Diagonal: fit c_i |x_i - y|^(2s-N) to the nearest off-diagonal values and
  // integrate the local model analytically over the owning cell.
  const double s = kernel.params.s;
  const int N = grid.domain.dim;
  for (int i = 0; i < n; ++i) {
    double c_fit = 0.0;
    int fits = 0;
    for (int j : {i - 1, i + 1}) {
      if (j < 0 || j >= n) continue;
      double d2 = 0.0;
      for (int k = 0; k < N; ++k) {
        const double diff = grid.nodes[static_cast<std::size_t>(i)][k] -
                            grid.nodes[static_cast<std::size_t>(j)][k];
        d2 += diff * diff;
      }
      c_fit += gop.matrix(i, j) * std::pow(std::sqrt(d2), N - 2.0 * s);
      ++fits;
    }
    c_fit /= fits;
    gop.matrix(i, i) = c_fit * diagonal_cell_integral(grid, i, s) / grid.weights[i];
  }
  if (!gop.matrix.allFinite()) throw NumericError("assemble: non-finite kernel values");
  return gop;
}

Vec DiscreteGreenOperator::apply(const Vec& f) const {
  if (f.size() != matrix.rows())
    throw ValidationError("apply: grid function size does not match the operator");
  const Eigen::Index n = matrix.rows();
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += matrix(i, j) * grid.weights[j] * f[j];
    out[i] = acc;
  }
  return out;
}

Vec DiscreteGreenOperator::apply_measure(const WeightedMeasure& mu) const {
  const Eigen::Index n = matrix.rows();
  Vec out = Vec::Zero(n);
  const Point center = grid.is_interval()
                           ? point1d(0.5 * (grid.domain.a + grid.domain.b))
                           : grid.domain.center;
  for (const Atom& atom : mu.atoms) {
    Point y = atom.x;
    // nudge atoms that coincide with a node toward the domain center
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
      if (grid.nodes[i] == y) {
        const double cell = grid.is_interval()
                                ? grid.edges[i + 1] - grid.edges[i]
                                : std::pow(grid.weights[static_cast<Eigen::Index>(i)],
                                           1.0 / grid.domain.dim);
        for (int k = 0; k < grid.domain.dim; ++k) {
          const double dir = center[k] - y[k];
          y[k] += 1e-9 * cell * (dir >= 0.0 ? 1.0 : -1.0);
        }
        break;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      out[i] += kernel.eval(grid.nodes[static_cast<std::size_t>(i)], y) * atom.mass;
  }
  if (mu.has_density()) out += apply(mu.density);
  return out;
}

double weighted_lp_norm(const Vec& u, const Grid& grid, double p, double alpha) {
  if (!(p >= 1.0)) throw ValidationError("weighted_lp_norm requires p >= 1");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    acc += std::pow(std::abs(u[i]), p) * std::pow(grid.deltas[i], alpha) *
           grid.weights[i];
  return std::pow(acc, 1.0 / p);
}

double marcinkiewicz_norm(const Vec& u, const Grid& grid, double q, double alpha) {
  if (!(q > 1.0)) throw ValidationError("marcinkiewicz_norm requires q > 1");
  std::vector<double> levels(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    levels[static_cast<std::size_t>(i)] = std::abs(u[i]);
  std::sort(levels.begin(), levels.end());
  double best = 0.0;
  for (double level : levels) {
    if (level == 0.0) continue;
    double meas = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
      if (std::abs(u[i]) >= level)
        meas += std::pow(grid.deltas[i], alpha) * grid.weights[i];
    best = std::max(best, level * std::pow(meas, 1.0 / q));
  }
  return best;
}

double trace_quotient(const Vec& u, const GreenKernel& kernel, const Grid& grid,
                      double epsilon) {
  if (!(epsilon > 0.0 && epsilon < grid.deltas.maxCoeff()))
    throw ValidationError("trace_quotient requires epsilon in (0, max delta)");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (grid.deltas[i] >= epsilon) continue;
    const double W =
        boundary_weight(grid.nodes[static_cast<std::size_t>(i)], kernel.params,
                        kernel.domain);
    acc += u[i] / W * grid.weights[i];
  }
  return acc / epsilon;
}

void dump_operator(const DiscreteGreenOperator& gop, std::ostream& out) {
  const std::uint64_t n = static_cast<std::uint64_t>(gop.matrix.rows());
  const std::uint32_t family = gop.kernel.family == KernelFamily::RFL ? 0u : 1u;
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&family), sizeof family);
  out.write(reinterpret_cast<const char*>(&gop.kernel.params.s), sizeof(double));
  out.write(reinterpret_cast<const char*>(&gop.kernel.params.gamma), sizeof(double));
  for (Eigen::Index i = 0; i < gop.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < gop.matrix.cols(); ++j) {
      const double v = gop.matrix(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

DiscreteGreenOperator load_operator_matrix(std::istream& in) {
  std::uint64_t n = 0;
  std::uint32_t family = 0;
  DiscreteGreenOperator gop;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&family), sizeof family);
  in.read(reinterpret_cast<char*>(&gop.kernel.params.s), sizeof(double));
  in.read(reinterpret_cast<char*>(&gop.kernel.params.gamma), sizeof(double));
  gop.kernel.family = family == 0 ? KernelFamily::RFL : KernelFamily::SFL;
  gop.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < gop.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < gop.matrix.cols(); ++j) {
      double v = 0.0;
      in.read(reinterpret_cast<char*>(&v), sizeof v);
      gop.matrix(i, j) = v;
    }
  if (!in) throw NumericError("load_operator_matrix: truncated stream");
  return gop;
}

}  // namespace nlg
