#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wsncal/evaluation.hpp"

namespace wsncal {

struct LineSeries {
  std::string label;
  std::vector<double> values;
};

// Static SVG images for quick inspection; no plotting backend required.
void write_scatter_svg(const std::filesystem::path& path, std::span<const ScatterPoint> points,
                       const std::string& title);
void write_series_svg(const std::filesystem::path& path, std::span<const LineSeries> series,
                      const std::string& title);

}  // namespace wsncal
