#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sagdbscan/density.hpp"
#include "sagdbscan/error.hpp"

namespace sagdbscan {

inline constexpr std::size_t kSmoothingWindow = 5;
/// Smallest and largest-from-the-end candidate split positions (1-based).
inline constexpr std::size_t kFirstSplit = 10;
inline constexpr std::size_t kSplitTailMargin = 5;

enum class RegressionMode { OLS, L1 };

/// Trailing 5-term moving average of the descending density sequence.
/// Positions are 1-based: values()[0] is v_5, the last is v_n.
class SmoothedCurve {
 public:
  SmoothedCurve() = default;
  explicit SmoothedCurve(std::vector<double> v) : v_(std::move(v)) {}

  /// Object count n the curve was built from.
  std::size_t object_count() const noexcept { return v_.size() + 4; }
  std::size_t first_index() const noexcept { return kSmoothingWindow; }
  std::size_t last_index() const noexcept { return object_count(); }
  double at(std::size_t i) const noexcept { return v_[i - kSmoothingWindow]; }
  const std::vector<double>& values() const noexcept { return v_; }

 private:
  std::vector<double> v_;
};

inline SmoothedCurve smooth_sequence(std::span<const double> sorted_desc) {
  const std::size_t n = sorted_desc.size();
  if (n < kSmoothingWindow) {
    throw Error(ErrorCode::TooFewObjects,
                "smoothing needs at least 5 objects, got " + std::to_string(n));
  }
  std::vector<double> v;
  v.reserve(n - 4);
  for (std::size_t i = 4; i < n; ++i) {
    const double sum = sorted_desc[i] + sorted_desc[i - 1] + sorted_desc[i - 2] +
                       sorted_desc[i - 3] + sorted_desc[i - 4];
    v.push_back(sum / 5.0);
  }
  return SmoothedCurve(std::move(v));
}

inline SmoothedCurve smooth(const DensityProfile& profile) {
  const auto sorted = profile.sorted_desc();
  return smooth_sequence(sorted);
}

namespace detail {

struct Line {
  double intercept = 0.0;
  double slope = 0.0;
  double operator()(double x) const noexcept { return intercept + slope * x; }
};

// Least squares line through (first + t, y[t]).
inline Line fit_ols(std::span<const double> y, double first) {
  const std::size_t m = y.size();
  const double mean_x = first + static_cast<double>(m - 1) / 2.0;
  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= static_cast<double>(m);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const double dx = first + static_cast<double>(t) - mean_x;
    sxy += dx * (y[t] - mean_y);
    sxx += dx * dx;
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {mean_y - slope * mean_x, slope};
}

inline double median_inplace(std::vector<double>& values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Least absolute deviation line. For a fixed slope the best intercept is the
// median offset, and the remaining objective is convex in the slope; the
// optimum lies between the extreme consecutive slopes since x is evenly
// spaced, so golden-section search on that bracket converges to it.
inline Line fit_l1(std::span<const double> y, double first) {
  const std::size_t m = y.size();
  if (m < 2) return {y.empty() ? 0.0 : y[0], 0.0};
  double lo = y[1] - y[0];
  double hi = lo;
  for (std::size_t t = 2; t < m; ++t) {
    lo = std::min(lo, y[t] - y[t - 1]);
    hi = std::max(hi, y[t] - y[t - 1]);
  }
  std::vector<double> offsets(m);
  auto evaluate = [&](double slope, double* intercept_out) {
    for (std::size_t t = 0; t < m; ++t) {
      offsets[t] = y[t] - slope * (first + static_cast<double>(t));
    }
    std::vector<double> scratch = offsets;
    const double intercept = median_inplace(scratch);
    double cost = 0.0;
    for (double o : offsets) cost += std::abs(o - intercept);
    if (intercept_out) *intercept_out = intercept;
    return cost;
  };
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = evaluate(c, nullptr);
  double fd = evaluate(d, nullptr);
  for (int iter = 0; iter < 64 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = evaluate(c, nullptr);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = evaluate(d, nullptr);
    }
  }
  const double slope = 0.5 * (a + b);
  double intercept = 0.0;
  evaluate(slope, &intercept);
  return {intercept, slope};
}

inline double segment_abs_error(std::span<const double> y, double first,
                                RegressionMode mode) {
  const Line line = mode == RegressionMode::OLS ? fit_ols(y, first) : fit_l1(y, first);
  double err = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    err += std::abs(line(first + static_cast<double>(t)) - y[t]);
  }
  return err;
}

}  // namespace detail

/// Sum of absolute errors of two regression lines, one fitted to
/// v_5..v_p and one to v_{p+1}..v_n. Valid splits are 10 <= p <= n-5.
inline double split_residual(const SmoothedCurve& curve, std::size_t p,
                             RegressionMode mode = RegressionMode::OLS) {
  const std::size_t n = curve.object_count();
  if (p < kFirstSplit || p + kSplitTailMargin > n) {
    throw Error(ErrorCode::SplitOutOfRange,
                "split " + std::to_string(p) + " outside [10, " +
                    (n >= kSplitTailMargin ? std::to_string(n - kSplitTailMargin)
                                           : std::string("-")) +
                    "]");
  }
  const auto& v = curve.values();
  const std::size_t left_len = p - kSmoothingWindow + 1;
  std::span<const double> left(v.data(), left_len);
  std::span<const double> right(v.data() + left_len, v.size() - left_len);
  return detail::segment_abs_error(left, static_cast<double>(kSmoothingWindow), mode) +
         detail::segment_abs_error(right, static_cast<double>(p + 1), mode);
}

struct SplitSearchResult {
  /// 1-based position in the descending density sequence.
  std::size_t p_star = 0;
  /// (p, R_p) for every candidate p in ascending order.
  std::vector<std::pair<std::size_t, double>> residuals;
  double threshold = 0.0;
  std::vector<bool> member_mask;
  SmoothedCurve curve;

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < member_mask.size(); ++i) {
      if (member_mask[i]) out.push_back(i);
    }
    return out;
  }
  std::size_t member_count() const {
    return static_cast<std::size_t>(
        std::count(member_mask.begin(), member_mask.end(), true));
  }
};

/// Scans every split of the smoothed density curve, keeps the one with the
/// smallest two-line residual (earliest on ties) and marks as dense every
/// object whose density reaches rho' at that split.
inline SplitSearchResult find_dense_subset(const DensityProfile& profile,
                                           RegressionMode mode = RegressionMode::OLS) {
  const std::size_t n = profile.size();
  if (n < kFirstSplit + kSplitTailMargin) {
    throw Error(ErrorCode::TooFewObjects,
                "dense subset search needs at least 15 objects, got " +
                    std::to_string(n));
  }
  const auto sorted = profile.sorted_desc();
  SplitSearchResult result;
  result.curve = smooth_sequence(sorted);
  result.residuals.reserve(n - kFirstSplit - kSplitTailMargin + 1);
  double best = 0.0;
  for (std::size_t p = kFirstSplit; p + kSplitTailMargin <= n; ++p) {
    const double r = split_residual(result.curve, p, mode);
    result.residuals.emplace_back(p, r);
    if (result.p_star == 0 || r < best) {
      best = r;
      result.p_star = p;
    }
  }
  result.threshold = sorted[result.p_star - 1];
  result.member_mask.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.member_mask[j] = profile.rho[j] >= result.threshold;
  }
  return result;
}

}  // namespace sagdbscan
