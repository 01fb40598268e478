#pragma once

//============================================================================
// svg.hpp -- dependency-free batch plots: line charts (iteration series,
// fiber profiles) and a heat strip (boundary maxima over a parameter
// rectangle).  Output is deterministic: fixed formatting, no timestamps.
//============================================================================

#include <string>
#include <vector>

namespace fnls {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// pre: every series has matching x/y sizes and at least one finite point;
// with logy, only y > 0 points are drawn.
std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<Series>& series, int width = 720,
                           int height = 420, bool logy = false);

// Row-major values on an nx-by-ny rectangle, drawn as colored cells with a
// min/max legend.  pre: values.size() == nx * ny, nx, ny >= 1.
std::string svg_heat_strip(const std::string& title,
                           const std::vector<double>& values, int nx, int ny,
                           int width = 720, int height = 200);

}  // namespace fnls
