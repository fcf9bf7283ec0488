#pragma once

#include <string>
#include <vector>

#include "gadmp/trajectory.hpp"

namespace gadmp::plot {

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Standalone SVG line chart of every series against `times`.
std::string line_chart(const std::vector<double>& times, const std::vector<Series>& series,
                       const std::string& title);

/// One line per ambient coordinate. SPD(2) data (alone or as a product part)
/// adds a row of ellipse glyphs sampled every T/10 samples.
std::string trajectory_chart(const ManifoldTrajectory& traj, const std::string& title);

}  // namespace gadmp::plot
