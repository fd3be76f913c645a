#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "sagdbscan/dataset.hpp"
#include "sagdbscan/error.hpp"
#include "sagdbscan/grey_relation.hpp"

namespace sagdbscan {

enum class Metric { Euclidean, GreyDissimilarity };

struct DbscanParams {
  std::size_t min_pts = 1;
  double eps = 0.0;
  Metric metric = Metric::Euclidean;
};

/// Callable giving the distance between local indices a and b.
template <class F>
concept DistanceFunction = requires(const F& f, std::size_t a, std::size_t b) {
  { f(a, b) } -> std::convertible_to<double>;
};

inline double euclidean_distance(std::span<const double> a,
                                 std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// Distance between rows of a dataset under `metric`.
struct RowDistance {
  const Dataset* data;
  Metric metric;

  double operator()(std::size_t a, std::size_t b) const noexcept {
    if (metric == Metric::Euclidean) {
      return euclidean_distance(data->row(a), data->row(b));
    }
    if (a == b) return 0.0;
    return 1.0 - detail::grey_degree_unchecked(data->row(a), data->row(b));
  }
};

/// Largest distance from any of the `count` points to its m-th nearest other
/// point.
template <DistanceFunction Dist>
double auto_eps(std::size_t count, const Dist& dist, std::size_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "m must be >= 1");
  if (count < m + 1) {
    throw Error(ErrorCode::SubsetTooSmall,
                "need at least m+1=" + std::to_string(m + 1) + " points, got " +
                    std::to_string(count));
  }
  double eps = 0.0;
  std::vector<double> row;
  row.reserve(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    row.clear();
    for (std::size_t j = 0; j < count; ++j) {
      if (j != i) row.push_back(dist(i, j));
    }
    const auto mth = row.begin() + static_cast<std::ptrdiff_t>(m - 1);
    std::nth_element(row.begin(), mth, row.end());
    eps = std::max(eps, *mth);
  }
  return eps;
}

inline double auto_eps(const Dataset& subset, std::size_t m,
                       Metric metric = Metric::Euclidean) {
  return auto_eps(subset.rows(), RowDistance{&subset, metric}, m);
}

/// DBSCAN with plain O(n^2) region queries. A point is core when at least
/// min_pts *other* points lie within eps (inclusive). Clusters are numbered in
/// order of their lowest-index core point; a border point reachable from
/// several clusters joins the lowest-numbered one. Noise keeps id -1.
template <DistanceFunction Dist>
Clustering run_dbscan(std::size_t count, const Dist& dist,
                      const DbscanParams& params) {
  if (params.min_pts < 1) {
    throw Error(ErrorCode::InvalidParameter, "min_pts must be >= 1");
  }
  if (params.eps == 0.0) {
    throw Error(ErrorCode::SubsetDegenerate,
                "eps is 0 (the points coincide at the m-th neighbor)");
  }
  if (!(params.eps > 0.0) || !std::isfinite(params.eps)) {
    throw Error(ErrorCode::InvalidParameter, "eps must be positive and finite");
  }
  Clustering out(count);
  std::vector<std::size_t> region;
  auto query = [&](std::size_t p) {
    region.clear();
    for (std::size_t j = 0; j < count; ++j) {
      if (j != p && dist(p, j) <= params.eps) region.push_back(j);
    }
  };

  int next_id = 0;
  std::deque<std::size_t> frontier;
  for (std::size_t seed = 0; seed < count; ++seed) {
    if (out.assignments[seed] != kUnassigned) continue;
    query(seed);
    if (region.size() < params.min_pts) continue;
    const int id = next_id++;
    out.assignments[seed] = id;
    for (std::size_t r : region) {
      if (out.assignments[r] == kUnassigned) {
        out.assignments[r] = id;
        frontier.push_back(r);
      }
    }
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      query(q);
      if (region.size() < params.min_pts) continue;
      for (std::size_t r : region) {
        if (out.assignments[r] == kUnassigned) {
          out.assignments[r] = id;
          frontier.push_back(r);
        }
      }
    }
  }
  return out;
}

inline Clustering run_dbscan(const Dataset& subset, const DbscanParams& params) {
  return run_dbscan(subset.rows(), RowDistance{&subset, params.metric}, params);
}

}  // namespace sagdbscan
