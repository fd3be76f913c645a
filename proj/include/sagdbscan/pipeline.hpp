#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sagdbscan/dataset.hpp"
#include "sagdbscan/dbscan.hpp"
#include "sagdbscan/dense_subset.hpp"
#include "sagdbscan/density.hpp"
#include "sagdbscan/error.hpp"
#include "sagdbscan/grey_relation.hpp"

namespace sagdbscan {

inline constexpr std::size_t kMinPipelineObjects = 20;

enum class ParamSource { DefaultSchedule, UserOverride };

struct AutoParams {
  std::size_t k = 0;
  std::size_t m = 0;
  ParamSource source = ParamSource::DefaultSchedule;
};

/// Size-based defaults for the neighbor count k and MinPts m.
inline AutoParams compute_auto_params(std::size_t n) {
  if (n < kMinPipelineObjects) {
    throw Error(ErrorCode::TooFewObjects,
                "need at least 20 objects, got " + std::to_string(n));
  }
  AutoParams p;
  if (n < 500) {
    p.m = 3;
  } else if (n < 1000) {
    p.m = 4;
  } else if (n < 5000) {
    p.m = 5;
  } else {
    p.m = 10;
  }
  // ceil(2% n) and ceil(1% n) in integer arithmetic.
  if (n < 1000) {
    p.k = (2 * n + 99) / 100;
  } else if (n < 2000) {
    p.k = (n + 99) / 100;
  } else {
    p.k = 20;
  }
  return p;
}

/// Labels every unassigned object by repeatedly taking the globally closest
/// (labeled, unlabeled) pair and copying the label across. Newly labeled
/// objects serve as anchors for later steps. Ties go to the smaller labeled
/// index, then the smaller unlabeled index. Runs in O(|U| n) distance calls.
template <DistanceFunction Dist>
Clustering assign_remainder(std::size_t count, const Dist& dist, Clustering partial) {
  if (partial.size() != count) {
    throw Error(ErrorCode::LengthMismatch, "clustering size differs from dataset");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pending;
  std::vector<double> best_dist(count, inf);
  std::vector<std::size_t> best_anchor(count, count);
  bool any_labeled = false;
  for (std::size_t i = 0; i < count; ++i) {
    if (partial.assignments[i] == kUnassigned) {
      pending.push_back(i);
    } else {
      any_labeled = true;
    }
  }
  if (!any_labeled) {
    throw Error(ErrorCode::NoLabeledSeed, "no labeled object to grow from");
  }
  if (pending.empty()) return partial;

  for (std::size_t a = 0; a < count; ++a) {
    if (partial.assignments[a] == kUnassigned) continue;
    for (std::size_t u : pending) {
      const double d = dist(a, u);
      if (d < best_dist[u]) {
        best_dist[u] = d;
        best_anchor[u] = a;
      }
    }
  }

  while (!pending.empty()) {
    std::size_t pick = 0;
    for (std::size_t t = 1; t < pending.size(); ++t) {
      const std::size_t u = pending[t];
      const std::size_t w = pending[pick];
      if (best_dist[u] < best_dist[w] ||
          (best_dist[u] == best_dist[w] &&
           (best_anchor[u] < best_anchor[w] ||
            (best_anchor[u] == best_anchor[w] && u < w)))) {
        pick = t;
      }
    }
    const std::size_t j = pending[pick];
    partial.assignments[j] = partial.assignments[best_anchor[j]];
    partial.origin[j] = Origin::AssignedRemainder;
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    for (std::size_t u : pending) {
      const double d = dist(j, u);
      if (d < best_dist[u] || (d == best_dist[u] && j < best_anchor[u])) {
        best_dist[u] = d;
        best_anchor[u] = j;
      }
    }
  }
  return partial;
}

inline Clustering assign_remainder(const Dataset& data, Clustering partial,
                                   Metric metric = Metric::Euclidean) {
  return assign_remainder(data.rows(), RowDistance{&data, metric}, std::move(partial));
}

struct PipelineOptions {
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  Metric metric = Metric::Euclidean;
  bool normalize = false;
  RegressionMode regression = RegressionMode::OLS;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineReport {
  Clustering clustering;
  AutoParams params;
  DbscanParams dbscan;
  std::size_t dense_size = 0;
  std::size_t cluster_count = 0;
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;

  // Intermediates, kept for inspection and dumps.
  GreyMatrix grey;
  DensityProfile density;
  SplitSearchResult split;
};

/// Full run: grey matrix, grey KNN density, dense subset by split search,
/// DBSCAN on the dense subset with the automatic radius, then remainder
/// assignment under the same metric.
inline PipelineReport run_sag_dbscan(const Dataset& input,
                                     const PipelineOptions& options = {}) {
  using Clock = std::chrono::steady_clock;
  const std::size_t n = input.rows();
  PipelineReport report;
  report.params = compute_auto_params(n);
  if (options.k || options.m) report.params.source = ParamSource::UserOverride;
  if (options.k) report.params.k = *options.k;
  if (options.m) report.params.m = *options.m;
  if (report.params.m < 1) {
    throw Error(ErrorCode::InvalidParameter, "m must be >= 1");
  }

  auto stage_start = Clock::now();
  auto lap = [&](const char* name) {
    const auto now = Clock::now();
    report.timings.push_back(
        {name, std::chrono::duration<double>(now - stage_start).count()});
    stage_start = now;
  };

  const Dataset data = options.normalize ? input.min_max_normalized() : input;
  if (options.normalize) lap("normalize");

  report.grey = grey_matrix(data);
  lap("grey_matrix");
  report.density = grey_knn_density(report.grey, report.params.k);
  lap("density");
  report.split = find_dense_subset(report.density, options.regression);
  lap("dense_subset");

  const auto members = report.split.members();
  report.dense_size = members.size();
  if (members.size() < report.params.m + 1) {
    throw Error(ErrorCode::DegenerateDenseSubset,
                "dense subset has " + std::to_string(members.size()) +
                    " objects, need at least m+1=" +
                    std::to_string(report.params.m + 1));
  }

  const GreyMatrix& grey = report.grey;
  const Metric metric = options.metric;
  auto global_dist = [&data, &grey, metric](std::size_t a, std::size_t b) {
    if (metric == Metric::Euclidean) {
      return euclidean_distance(data.row(a), data.row(b));
    }
    return grey.dissimilarity(a, b);
  };
  auto dense_dist = [&members, &global_dist](std::size_t a, std::size_t b) {
    return global_dist(members[a], members[b]);
  };

  report.dbscan.min_pts = report.params.m;
  report.dbscan.metric = metric;
  report.dbscan.eps = auto_eps(members.size(), dense_dist, report.params.m);
  const Clustering core = run_dbscan(members.size(), dense_dist, report.dbscan);
  lap("dbscan");

  Clustering partial(n);
  std::size_t clusters = 0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    partial.assignments[members[a]] = core.assignments[a];
    if (core.assignments[a] != kUnassigned) {
      clusters = std::max(clusters, static_cast<std::size_t>(core.assignments[a]) + 1);
    }
  }
  report.cluster_count = clusters;

  std::vector<std::size_t> sizes(clusters, 0);
  for (int id : core.assignments) {
    if (id != kUnassigned) ++sizes[static_cast<std::size_t>(id)];
  }
  const auto smallest = *std::min_element(sizes.begin(), sizes.end());
  if (report.params.k > smallest) {
    report.warnings.push_back("k=" + std::to_string(report.params.k) +
                              " exceeds the smallest dense cluster (" +
                              std::to_string(smallest) + " objects)");
  }

  report.clustering = assign_remainder(n, global_dist, std::move(partial));
  lap("assign_remainder");
  return report;
}

}  // namespace sagdbscan
