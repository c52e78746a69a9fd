#ifndef NLGREEN_CONFIG_HPP
#define NLGREEN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlgreen/domain.hpp"
#include "nlgreen/kernel.hpp"
#include "nlgreen/measure.hpp"

namespace nlg {

inline constexpr int kSchemaVersion = 1;

struct MeasureSpec {
  std::vector<Atom> atoms;
  std::vector<double> density;  // node values, optional
};

struct ExperimentConfig {
  KernelFamily family = KernelFamily::RFL;
  double s = 0.25;
  int truncation = 2000;
  Domain domain = Domain::interval(0.0, 1.0);
  int n = 256;
  double grading = 2.0;
  double p = 1.5;
  MeasureSpec mu;
  std::optional<double> lambda;          // absolute value
  std::vector<double> sweep;             // fractions of lambda* when relative
  bool sweep_relative = true;
  std::uint64_t seed = 0;
  // command-specific knobs
  double q = 0.0;                        // marcinkiewicz probe exponent (0 = 0.9 p*)
  std::vector<double> probe_deltas{1e-1, 1e-2, 1e-3};
  std::vector<double> trace_epsilons{1e-1, 5e-2, 2.5e-2};
  int threeg_samples = 10000;
  int eigen_count = 3;
  std::string output_dir = ".";
  std::vector<std::string> formats{"csv", "json"};

  double gamma() const { return family == KernelFamily::SFL ? 1.0 : s; }
  KernelParams kernel_params() const { return {s, gamma(), domain.dim}; }
  GreenKernel make_kernel() const;
  WeightedMeasure make_measure(const Grid& grid) const;
};

/// Parses the declarative JSON config. Throws ValidationError with a message
/// naming the violated assumption, e.g. "(K2): N > 2s".
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Warn-level check of (K5) N >= N_{s,gamma} for stability-sensitive commands.
bool satisfies_k5(const ExperimentConfig& config);

/// Fully resolved config echo, embedded in every emitted file.
nlohmann::json resolved_json(const ExperimentConfig& config);

}  // namespace nlg

#endif
