#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mindisp/costs.hpp"
#include "mindisp/descent.hpp"
#include "mindisp/hamiltonian.hpp"
#include "mindisp/models.hpp"
#include "mindisp/sde.hpp"

namespace mindisp::tools {

// Flat key = value experiment config. Lines starting with '#' are comments.
class KVConfig {
 public:
  static KVConfig load(const std::string& path);
  static KVConfig parse(const std::string& text);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;  // throws if missing
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  const std::vector<std::string>& unused() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> touched_;
};

// Fully resolved experiment: model, cost, grid, control space, descent
// settings, output options.
struct Experiment {
  ModelDefinition model;
  CostFunction cost;
  TimeGrid grid;
  ControlSpace space;
  DescentConfig descent;
  std::string model_name;
  std::string cost_name;
  int path_bundle = 50;  // sample paths written for plotting
  std::map<std::string, std::string> echo;  // raw key-values for artifacts

  static Experiment from_config(const KVConfig& cfg);
};

}  // namespace mindisp::tools
