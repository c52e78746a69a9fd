#include "nlgreen/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace nlg {
namespace {

Point parse_point(const nlohmann::json& j) {
  Point x{};
  if (j.is_number()) {
    x[0] = j.get<double>();
  } else {
    int k = 0;
    for (const auto& c : j) {
      if (k >= 3) throw ValidationError("points have at most 3 coordinates");
      x[static_cast<std::size_t>(k++)] = c.get<double>();
    }
  }
  return x;
}

}  // namespace

GreenKernel ExperimentConfig::make_kernel() const {
  if (family == KernelFamily::RFL) return GreenKernel::rfl(domain, s);
  return GreenKernel::sfl(domain, s, truncation);
}

WeightedMeasure ExperimentConfig::make_measure(const Grid& grid) const {
  WeightedMeasure m;
  m.atoms = mu.atoms;
  if (!mu.density.empty()) {
    if (static_cast<int>(mu.density.size()) != grid.size())
      throw ValidationError("measure density length must equal the grid size");
    m.density = Eigen::Map<const Vec>(mu.density.data(),
                                      static_cast<Eigen::Index>(mu.density.size()));
  }
  return m;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  const auto& op = j.at("operator");
  const std::string fam = op.at("family").get<std::string>();
  if (fam == "rfl")
    cfg.family = KernelFamily::RFL;
  else if (fam == "sfl")
    cfg.family = KernelFamily::SFL;
  else
    throw ValidationError("operator.family must be \"rfl\" or \"sfl\"");
  cfg.s = op.at("s").get<double>();
  cfg.truncation = op.value("truncation", 2000);

  if (j.contains("domain")) {
    const auto& dom = j.at("domain");
    const std::string kind = dom.value("kind", "interval");
    if (kind == "interval") {
      cfg.domain = Domain::interval(dom.value("a", 0.0), dom.value("b", 1.0));
    } else if (kind == "ball") {
      Point c{};
      if (dom.contains("center")) c = parse_point(dom.at("center"));
      cfg.domain = Domain::ball(c, dom.value("radius", 1.0), dom.value("dim", 2));
    } else {
      throw ValidationError("domain.kind must be \"interval\" or \"ball\"");
    }
  }
  if (j.contains("grid")) {
    cfg.n = j.at("grid").value("n", 256);
    cfg.grading = j.at("grid").value("grading", 2.0);
  }
  if (j.contains("problem")) {
    const auto& prob = j.at("problem");
    cfg.p = prob.value("p", 1.5);
    if (prob.contains("lambda")) cfg.lambda = prob.at("lambda").get<double>();
    if (prob.contains("sweep")) {
      cfg.sweep = prob.at("sweep").get<std::vector<double>>();
      cfg.sweep_relative = prob.value("sweep_relative", true);
    }
    if (prob.contains("mu")) {
      const auto& m = prob.at("mu");
      for (const auto& atom : m.value("atoms", nlohmann::json::array()))
        cfg.mu.atoms.push_back(
            {parse_point(atom.at("x")), atom.at("mass").get<double>()});
      if (m.contains("density"))
        cfg.mu.density = m.at("density").get<std::vector<double>>();
    }
  }
  cfg.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("verify")) {
    const auto& v = j.at("verify");
    cfg.q = v.value("q", 0.0);
    if (v.contains("probe_deltas"))
      cfg.probe_deltas = v.at("probe_deltas").get<std::vector<double>>();
    if (v.contains("trace_epsilons"))
      cfg.trace_epsilons = v.at("trace_epsilons").get<std::vector<double>>();
    cfg.threeg_samples = v.value("threeg_samples", 10000);
  }
  cfg.eigen_count = j.value("eigen", nlohmann::json::object()).value("count", 3);
  if (j.contains("output")) {
    cfg.output_dir = j.at("output").value("directory", ".");
    if (j.at("output").contains("formats"))
      cfg.formats = j.at("output").at("formats").get<std::vector<std::string>>();
  }

  validate_kernel_params(cfg.kernel_params());
  if (cfg.n < 8) throw ValidationError("grid.n must be at least 8");
  if (cfg.grading < 1.0) throw ValidationError("grid.grading must be >= 1");
  if (!(cfg.p > 1.0)) throw ValidationError("problem.p must exceed 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_config(j);
}

bool satisfies_k5(const ExperimentConfig& config) {
  return config.domain.dim >= dimension_threshold(config.kernel_params());
}

nlohmann::json resolved_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["operator"] = {{"family", family_name(config.family)},
                   {"s", config.s},
                   {"gamma", config.gamma()},
                   {"truncation", config.truncation}};
  if (config.domain.kind == DomainKind::Interval) {
    j["domain"] = {{"kind", "interval"}, {"a", config.domain.a}, {"b", config.domain.b}};
  } else {
    j["domain"] = {{"kind", "ball"},
                   {"dim", config.domain.dim},
                   {"radius", config.domain.radius},
                   {"center", {config.domain.center[0], config.domain.center[1],
                               config.domain.center[2]}}};
  }
  j["grid"] = {{"n", config.n}, {"grading", config.grading}};
  nlohmann::json mu;
  mu["atoms"] = nlohmann::json::array();
  for (const Atom& a : config.mu.atoms)
    mu["atoms"].push_back({{"x", {a.x[0], a.x[1], a.x[2]}}, {"mass", a.mass}});
  if (!config.mu.density.empty()) mu["density"] = config.mu.density;
  j["problem"] = {{"p", config.p}, {"mu", mu}};
  if (config.lambda) j["problem"]["lambda"] = *config.lambda;
  if (!config.sweep.empty()) {
    j["problem"]["sweep"] = config.sweep;
    j["problem"]["sweep_relative"] = config.sweep_relative;
  }
  j["verify"] = {{"q", config.q},
                 {"probe_deltas", config.probe_deltas},
                 {"trace_epsilons", config.trace_epsilons},
                 {"threeg_samples", config.threeg_samples}};
  j["eigen"] = {{"count", config.eigen_count}};
  j["seed"] = config.seed;
  j["output"] = {{"directory", config.output_dir}, {"formats", config.formats}};
  return j;
}

}  // namespace nlg
