#pragma once

#include <string>

#include "config.hpp"
#include "mindisp/descent.hpp"

namespace mindisp::tools {

// Full double precision, locale-independent.
std::string format_double(double v);

// Writes cost_trace.csv, control.csv, paths_initial.csv, paths_learned.csv
// and report.json into out_dir. Every artifact carries the config echo and
// seed; wall-clock timings are deliberately kept out so reruns with the same
// config and seed are bit-identical.
void write_artifacts(const std::string& out_dir, const Experiment& exp,
                     const EnsembleControl& initial_control,
                     const DescentReport& report);

}  // namespace mindisp::tools
