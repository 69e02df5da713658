#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lep::svg {

struct Series {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool line = false;  // polyline instead of dots
};

struct Plot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
};

// Minimal standalone SVG: frame, tick labels at the data bounds, series.
std::string render(const Plot& plot);

void write_file(const std::string& path, const std::string& content);

}  // namespace lep::svg
