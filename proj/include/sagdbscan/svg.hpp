#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <string>

#include "sagdbscan/dataset.hpp"
#include "sagdbscan/error.hpp"

namespace sagdbscan {

inline constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

/// Scatter plot of a 2-D clustering. Fill color cycles through kPalette by
/// cluster id; remainder-assigned points get a black outline.
inline void plot_scatter(const Dataset& data, const Clustering& clustering,
                         const std::string& path) {
  if (data.cols() != 2) {
    throw Error(ErrorCode::NotTwoDimensional,
                "scatter plot needs 2 features, dataset has " +
                    std::to_string(data.cols()));
  }
  if (clustering.size() != data.rows()) {
    throw Error(ErrorCode::LengthMismatch, "clustering size differs from dataset");
  }
  if (path.empty()) throw Error(ErrorCode::IoError, "empty output path");

  double x0 = data.at(0, 0), x1 = x0, y0 = data.at(0, 1), y1 = y0;
  for (std::size_t i = 1; i < data.rows(); ++i) {
    x0 = std::min(x0, data.at(i, 0));
    x1 = std::max(x1, data.at(i, 0));
    y0 = std::min(y0, data.at(i, 1));
    y1 = std::max(y1, data.at(i, 1));
  }
  constexpr double kSize = 800.0;
  constexpr double kMargin = 20.0;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double scale = (kSize - 2 * kMargin) / span;

  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int id = clustering.assignments[i];
    const char* fill =
        id < 0 ? "#000000" : kPalette[static_cast<std::size_t>(id) % kPalette.size()];
    const double cx = kMargin + (data.at(i, 0) - x0) * scale;
    const double cy = kSize - kMargin - (data.at(i, 1) - y0) * scale;
    out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2.5\" fill=\""
        << fill << '"';
    if (clustering.origin[i] == Origin::AssignedRemainder) {
      out << " stroke=\"#000000\" stroke-width=\"0.8\"";
    }
    out << "/>\n";
  }
  out << "</svg>\n";
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

}  // namespace sagdbscan
