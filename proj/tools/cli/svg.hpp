#pragma once

#include <string>
#include <vector>

#include "cli/report.hpp"

namespace brlab::cli {

// self-contained SVG: log-log scatter, fitted line and the slope in the legend
std::string plot_svg(const Plot& p);
// table of report rows coloured by outcome
std::string summary_svg(const std::string& title, const std::vector<Row>& rows);

}  // namespace brlab::cli
