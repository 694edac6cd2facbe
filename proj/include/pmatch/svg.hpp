#pragma once

#include "pmatch/stats.hpp"

#include <string>

namespace pmatch {

enum class PlotAxes { LogLog, SemiLog };

/// Flat SVG line chart of a survival curve; zero survivals are dropped.
std::string survival_svg(const TailEstimate& tail, PlotAxes axes, const std::string& title);

}  // namespace pmatch
