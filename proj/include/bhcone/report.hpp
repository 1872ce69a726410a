#pragma once

#include "bhcone/config.hpp"
#include "bhcone/experiments.hpp"

#include <string>
#include <vector>

namespace bhcone {

/// <dir>/<name>.csv with the report's fixed column order.
std::string write_csv(const ExperimentReport& report, const std::string& dir);

/// <dir>/<name>.svg line plot of the report's series; empty string if nothing to plot.
std::string write_svg(const ExperimentReport& report, const std::string& dir);

/// Criterion -> pass/fail summary plus parameters, fits and measured values.
/// Wall-clock times are left out so the file is reproducible.
std::string write_summary(const std::vector<ExperimentReport>& reports, const ExperimentConfig& config,
                          const std::string& dir);

std::string render_svg(const ExperimentReport& report);

}  // namespace bhcone
