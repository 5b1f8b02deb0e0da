#include "config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mindisp::tools {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

KVConfig KVConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

KVConfig KVConfig::parse(const std::string& text) {
  KVConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

bool KVConfig::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::string KVConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw std::runtime_error("missing required config key: " + key);
  return it->second;
}

std::string KVConfig::get(const std::string& key,
                          const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KVConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return std::stod(get(key));
}

int KVConfig::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  return std::stoi(get(key));
}

std::uint64_t KVConfig::get_u64(const std::string& key,
                                std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  return std::stoull(get(key));
}

std::vector<double> KVConfig::get_doubles(const std::string& key) const {
  std::istringstream in(get(key));
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

const std::vector<std::string>& KVConfig::unused() const {
  static const std::vector<std::string> none;
  return none;
}

Experiment Experiment::from_config(const KVConfig& cfg) {
  Experiment exp;
  exp.echo = cfg.values();

  exp.model_name = cfg.get("model", "theta");
  const double horizon = cfg.get_double("T", 6.0);
  const int knots_per_unit = cfg.get_int("knots_per_unit", 20);
  const int substeps = cfg.get_int("substeps", 5);
  exp.grid = TimeGrid::regular(horizon, knots_per_unit, substeps);

  if (exp.model_name == "theta") {
    ThetaParams params;
    params.beta = cfg.get_double("beta", 0.05);
    params.x0_mean = cfg.get_double("theta.x0_mean", params.x0_mean);
    params.x0_std = cfg.get_double("theta.x0_std", params.x0_std);
    params.y0_mean = cfg.get_double("theta.y0_mean", params.y0_mean);
    params.y0_std = cfg.get_double("theta.y0_std", params.y0_std);
    exp.model = theta_model(params);
  } else if (exp.model_name == "brownian") {
    exp.model = brownian_model(cfg.get_double("beta", 0.05),
                               cfg.get_double("brownian.y0", 0.0));
  } else if (exp.model_name == "linear") {
    exp.model = controlled_linear_model(
        cfg.get_double("linear.a", 0.0), cfg.get_double("linear.b", 1.0),
        cfg.get_double("linear.sigma", 0.3), cfg.get_double("linear.x0", 1.0));
  } else {
    throw std::runtime_error("unknown model: " + exp.model_name);
  }

  exp.cost_name = cfg.get("cost", "spike");
  if (exp.cost_name == "spike") {
    exp.cost = spike_cost(cfg.get_int("spike.p", 1));
  } else if (exp.cost_name == "moment") {
    MomentIndex idx;
    const auto alpha = cfg.get_doubles("moment.alpha");
    const auto target = cfg.get_doubles("moment.target");
    idx.alpha.resize(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
      idx.alpha[static_cast<int>(i)] = static_cast<int>(alpha[i]);
    idx.target = Eigen::Map<const Vec>(target.data(),
                                       static_cast<Eigen::Index>(target.size()));
    exp.cost = central_moment_cost(idx);
  } else if (exp.cost_name == "trace_cov") {
    // The state-doubling route: the quadratic dispersion functional becomes a
    // plain terminal cost on the product model.
    const int n = exp.model.state_dim;
    exp.model = doubled_model(exp.model);
    exp.cost = doubled_spread_cost(n);
  } else {
    throw std::runtime_error("unknown cost: " + exp.cost_name);
  }

  const std::string space_kind = cfg.get("control", "penalty");
  if (exp.model.control_dim > 0) {
    if (space_kind == "penalty") {
      exp.space = ControlSpace::penalty(exp.model.control_dim,
                                        cfg.get_double("lambda", 1.0));
    } else if (space_kind == "box") {
      const auto lo = cfg.get_doubles("box.lo");
      const auto hi = cfg.get_doubles("box.hi");
      exp.space = ControlSpace::box(
          Eigen::Map<const Vec>(lo.data(), static_cast<Eigen::Index>(lo.size())),
          Eigen::Map<const Vec>(hi.data(),
                                static_cast<Eigen::Index>(hi.size())));
      if (exp.space.dim != exp.model.control_dim)
        throw std::runtime_error("box bounds do not match control dimension");
    } else {
      throw std::runtime_error("unknown control space: " + space_kind);
    }
  }

  exp.descent.adjoint_paths = cfg.get_int("N", 100);
  exp.descent.synthesis_particles = cfg.get_int("M", 1);
  exp.descent.tolerance = cfg.get_double("eps", 1e-2);
  exp.descent.max_iters = cfg.get_int("max_iters", 10);
  exp.descent.patience = cfg.get_int("patience", 3);
  exp.descent.eval_samples = cfg.get_int("n_eval", 1000);
  exp.descent.seed = cfg.get_u64("seed", 0);
  exp.descent.fd_step = cfg.get_double("fd_step", 1e-3);
  exp.descent.validate();

  exp.path_bundle = cfg.get_int("paths.bundle", 50);
  return exp;
}

}  // namespace mindisp::tools
