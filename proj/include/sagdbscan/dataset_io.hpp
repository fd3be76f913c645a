#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sagdbscan/dataset.hpp"
#include "sagdbscan/error.hpp"

namespace sagdbscan {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range) {
    return std::numeric_limits<double>::infinity();
  }
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<long long> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace detail

/// Reads a comma-separated numeric table. A first row in which no cell parses
/// as a number is treated as a header. When `label_column` is given, that
/// column becomes the ground truth: non-negative integer labels are kept as
/// is, anything else (class names, negative ids) is mapped to 0,1,2,... in
/// order of first appearance.
inline Dataset load_csv(const std::string& path,
                        std::optional<std::size_t> label_column = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "file not found: " + path);

  std::vector<double> values;
  std::vector<std::string> raw_labels;
  std::size_t arity = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool first_content_line = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);

    if (first_content_line) {
      first_content_line = false;
      const bool any_numeric = std::any_of(
          cells.begin(), cells.end(),
          [](std::string_view c) { return detail::parse_double(c).has_value(); });
      if (!any_numeric) {
        arity = cells.size();
        continue;
      }
    }

    if (arity == 0) arity = cells.size();
    if (cells.size() != arity) {
      throw Error(ErrorCode::RaggedRows,
                  "row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(arity));
    }
    if (label_column && *label_column >= arity) {
      throw Error(ErrorCode::ParseError,
                  "label column " + std::to_string(*label_column) +
                      " out of range for " + std::to_string(arity) + " columns");
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_column && c == *label_column) {
        raw_labels.emplace_back(cells[c]);
        continue;
      }
      const auto v = detail::parse_double(cells[c]);
      if (!v) {
        throw Error(ErrorCode::ParseError,
                    "row " + std::to_string(line_no) + " column " +
                        std::to_string(c + 1) + ": '" + std::string(cells[c]) +
                        "'");
      }
      if (!std::isfinite(*v)) {
        throw Error(ErrorCode::NonFiniteValue,
                    "row " + std::to_string(line_no) + " column " +
                        std::to_string(c + 1));
      }
      values.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::ParseError, "no data rows in " + path);
  const std::size_t cols = label_column ? arity - 1 : arity;
  if (cols == 0) throw Error(ErrorCode::ParseError, "no feature columns");

  std::optional<std::vector<int>> labels;
  if (label_column) {
    std::vector<int> ids;
    ids.reserve(raw_labels.size());
    bool numeric = true;
    for (const auto& s : raw_labels) {
      const auto v = detail::parse_integer(s);
      if (!v || *v < 0 || *v > std::numeric_limits<int>::max()) {
        numeric = false;
        break;
      }
      ids.push_back(static_cast<int>(*v));
    }
    if (!numeric) {
      ids.clear();
      std::map<std::string, int> seen;
      for (const auto& s : raw_labels) {
        auto [it, inserted] = seen.emplace(s, static_cast<int>(seen.size()));
        ids.push_back(it->second);
      }
    }
    labels = std::move(ids);
  }
  return Dataset(rows, cols, std::move(values), std::move(labels),
                 detail::stem_of(path));
}

/// Writes features with 17 significant digits; labels, if any, go in a
/// trailing `label` column.
inline void write_dataset_csv(const Dataset& data, const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::IoError, "empty output path");
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  for (std::size_t j = 0; j < data.cols(); ++j) {
    out << (j ? "," : "") << 'x' << j;
  }
  if (data.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      out << (j ? "," : "") << detail::format_real(data.at(i, j));
    }
    if (data.has_labels()) out << ',' << (*data.labels())[i];
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

/// Result file: header `index,cluster,origin`, origin is `core` or `assigned`.
inline void write_result(const Clustering& clustering, const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::IoError, "empty output path");
  if (!clustering.is_final()) {
    throw Error(ErrorCode::InvalidParameter,
                "clustering still has unassigned objects");
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out << "index,cluster,origin\n";
  for (std::size_t i = 0; i < clustering.size(); ++i) {
    out << i << ',' << clustering.assignments[i] << ','
        << (clustering.origin[i] == Origin::DenseCore ? "core" : "assigned")
        << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

inline Clustering read_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "file not found: " + path);
  std::string line;
  std::getline(in, line);
  if (detail::trim(line) != "index,cluster,origin") {
    throw Error(ErrorCode::ParseError, "unexpected header in " + path);
  }
  Clustering out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    const auto index = cells.size() == 3 ? detail::parse_integer(cells[0])
                                         : std::nullopt;
    const auto cluster = cells.size() == 3 ? detail::parse_integer(cells[1])
                                           : std::nullopt;
    if (!index || !cluster || *index != static_cast<long long>(out.size()) ||
        (cells[2] != "core" && cells[2] != "assigned")) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(line_no));
    }
    out.assignments.push_back(static_cast<int>(*cluster));
    out.origin.push_back(cells[2] == "core" ? Origin::DenseCore
                                            : Origin::AssignedRemainder);
  }
  return out;
}

/// Isotropic Gaussian blobs; `spread` is the per-axis standard deviation.
/// Rows are grouped by center and labeled with the center index.
inline Dataset generate_blobs(const std::vector<std::vector<double>>& centers,
                              std::size_t points_per_center, double spread,
                              std::uint64_t seed) {
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    throw Error(ErrorCode::InvalidSpread, "spread must be a positive number");
  }
  if (centers.empty() || points_per_center == 0) {
    throw Error(ErrorCode::InvalidParameter,
                "need at least one center and one point per center");
  }
  const std::size_t dim = centers.front().size();
  for (const auto& c : centers) {
    if (c.size() != dim || dim == 0) {
      throw Error(ErrorCode::DimensionMismatch, "centers differ in dimension");
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, spread);
  std::vector<double> values;
  values.reserve(centers.size() * points_per_center * dim);
  std::vector<int> labels;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t p = 0; p < points_per_center; ++p) {
      for (std::size_t d = 0; d < dim; ++d) {
        values.push_back(centers[c][d] + gauss(rng));
      }
      labels.push_back(static_cast<int>(c));
    }
  }
  return Dataset(centers.size() * points_per_center, dim, std::move(values),
                 std::move(labels), "blobs");
}

/// Regions of the T-shaped benchmark: a T made of two rectangles and two
/// discs well clear of it.
struct ShapeTGeometry {
  struct Rect {
    double x0, x1, y0, y1;
    bool contains(double x, double y) const {
      return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
    double area() const { return (x1 - x0) * (y1 - y0); }
  };
  struct Disc {
    double cx, cy, r;
    bool contains(double x, double y) const {
      return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
    }
    double area() const { return std::numbers::pi * r * r; }
  };

  static constexpr Rect bar{0.0, 6.0, 8.0, 10.0};
  static constexpr Rect stem{2.0, 4.0, 0.0, 8.0};
  static constexpr Disc right{9.5, 5.0, 2.0};
  static constexpr Disc left{-4.0, 3.0, 2.0};

  /// Label 0 = T, 1 = right disc, 2 = left disc; -1 outside every region.
  static int region_of(double x, double y) {
    if (bar.contains(x, y) || stem.contains(x, y)) return 0;
    if (right.contains(x, y)) return 1;
    if (left.contains(x, y)) return 2;
    return -1;
  }
};

/// Two-dimensional, three-cluster set where cluster 0 is T-shaped. Points are
/// split across clusters in proportion to region area so all three share one
/// density. A `noise_fraction` share of each cluster is jittered off its
/// region with Gaussian noise (sigma 0.5) while keeping its label.
inline Dataset generate_shape_t(std::size_t points, double noise_fraction,
                                std::uint64_t seed) {
  if (points < 30) {
    throw Error(ErrorCode::TooFewPoints, "ShapeT needs at least 30 points");
  }
  if (!(noise_fraction >= 0.0 && noise_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "noise_fraction must be in [0,1)");
  }
  using G = ShapeTGeometry;
  const double area_t = G::bar.area() + G::stem.area();
  const double total = area_t + G::right.area() + G::left.area();
  std::size_t counts[3];
  counts[1] = static_cast<std::size_t>(
      std::floor(static_cast<double>(points) * G::right.area() / total));
  counts[2] = static_cast<std::size_t>(
      std::floor(static_cast<double>(points) * G::left.area() / total));
  counts[0] = points - counts[1] - counts[2];

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, 0.5);

  auto sample_t = [&](double& x, double& y) {
    const double pick = unit(rng) * area_t;
    const auto& r = pick < G::bar.area() ? G::bar : G::stem;
    x = r.x0 + unit(rng) * (r.x1 - r.x0);
    y = r.y0 + unit(rng) * (r.y1 - r.y0);
  };
  auto sample_disc = [&](const G::Disc& d, double& x, double& y) {
    const double radius = d.r * std::sqrt(unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    x = d.cx + radius * std::cos(angle);
    y = d.cy + radius * std::sin(angle);
  };

  std::vector<double> values;
  values.reserve(points * 2);
  std::vector<int> labels;
  labels.reserve(points);
  for (int c = 0; c < 3; ++c) {
    const auto noisy = static_cast<std::size_t>(
        std::floor(static_cast<double>(counts[c]) * noise_fraction));
    for (std::size_t p = 0; p < counts[c]; ++p) {
      double x = 0.0, y = 0.0;
      if (c == 0) {
        sample_t(x, y);
      } else {
        sample_disc(c == 1 ? G::right : G::left, x, y);
      }
      if (p < noisy) {
        x += jitter(rng);
        y += jitter(rng);
      }
      values.push_back(x);
      values.push_back(y);
      labels.push_back(c);
    }
  }
  return Dataset(points, 2, std::move(values), std::move(labels), "shapet");
}

}  // namespace sagdbscan
