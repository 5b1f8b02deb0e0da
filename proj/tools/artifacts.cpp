#include "artifacts.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

namespace mindisp::tools {

namespace {

using nlohmann::ordered_json;

std::ofstream open_out(const std::string& dir, const std::string& name) {
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_header(std::ofstream& out, const Experiment& exp) {
  out << "# seed=" << exp.descent.seed << "\n";
  for (const auto& [k, v] : exp.echo) out << "# " << k << "=" << v << "\n";
}

void write_path_bundle(const std::string& dir, const std::string& name,
                       const Experiment& exp, const EnsembleControl& control,
                       std::uint32_t tag) {
  auto out = open_out(dir, name);
  write_header(out, exp);
  out << "time,particle";
  for (int i = 0; i < exp.model.state_dim; ++i) out << ",x_" << (i + 1);
  out << "\n";
  for (int l = 0; l < exp.path_bundle; ++l) {
    GaussianStream init(exp.descent.seed,
                        {StreamPurpose::Diagnostic, tag,
                         static_cast<std::uint64_t>(l), 0});
    const Vec x0 = exp.model.initial_law(init);
    const auto path = simulate_path(
        exp.model, exp.grid, control, 0.0, x0, exp.descent.seed,
        {StreamPurpose::Diagnostic, tag, static_cast<std::uint64_t>(l), 1});
    for (const auto& [t, x] : path) {
      out << format_double(t) << "," << l;
      for (int i = 0; i < exp.model.state_dim; ++i)
        out << "," << format_double(x[i]);
      out << "\n";
    }
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_artifacts(const std::string& out_dir, const Experiment& exp,
                     const EnsembleControl& initial_control,
                     const DescentReport& report) {
  std::filesystem::create_directories(out_dir);

  {
    auto out = open_out(out_dir, "cost_trace.csv");
    write_header(out, exp);
    out << "iteration,cost,std_error\n";
    for (const auto& rec : report.trace) {
      out << rec.iteration << "," << format_double(rec.cost) << ","
          << format_double(rec.std_error) << "\n";
    }
  }

  {
    auto out = open_out(out_dir, "control.csv");
    write_header(out, exp);
    out << "time";
    for (int j = 0; j < exp.model.control_dim; ++j) out << ",u_" << (j + 1);
    out << "\n";
    for (int k = 0; k < exp.grid.intervals(); ++k) {
      out << format_double(exp.grid.knots[k]);
      for (int j = 0; j < exp.model.control_dim; ++j)
        out << "," << format_double(report.best_control(k, j));
      out << "\n";
    }
  }

  write_path_bundle(out_dir, "paths_initial.csv", exp, initial_control, 100);
  EnsembleControl learned;
  learned.coeffs = report.best_control;
  write_path_bundle(out_dir, "paths_learned.csv", exp, learned, 101);

  {
    ordered_json j;
    j["seed"] = exp.descent.seed;
    j["config"] = exp.echo;
    j["model"] = exp.model_name;
    j["cost"] = exp.cost_name;
    j["iterations"] = report.iterations;
    j["best"] = {{"iteration", report.best_iteration},
                 {"cost", report.best_cost},
                 {"std_error", report.best_std_error}};
    ordered_json trace = ordered_json::array();
    for (std::size_t i = 0; i < report.trace.size(); ++i) {
      const auto& rec = report.trace[i];
      ordered_json entry;
      entry["iteration"] = rec.iteration;
      entry["cost"] = rec.cost;
      entry["std_error"] = rec.std_error;
      ordered_json rows = ordered_json::array();
      const Mat& u = report.controls[i];
      for (Eigen::Index k = 0; k < u.rows(); ++k) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back(u(k, c));
        rows.push_back(row);
      }
      entry["control"] = rows;
      trace.push_back(entry);
    }
    j["trace"] = trace;
    ordered_json best_rows = ordered_json::array();
    for (Eigen::Index k = 0; k < report.best_control.rows(); ++k) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < report.best_control.cols(); ++c)
        row.push_back(report.best_control(k, c));
      best_rows.push_back(row);
    }
    j["best_control"] = best_rows;

    auto out = open_out(out_dir, "report.json");
    out << j.dump(2) << "\n";
  }
}

}  // namespace mindisp::tools
