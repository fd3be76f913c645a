#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sagdbscan/error.hpp"

namespace sagdbscan {

/// Co-occurrence counts between predicted clusters (rows) and ground-truth
/// classes (columns). Ids of both sides are compacted in ascending order.
struct ContingencyTable {
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> row_sums;
  std::vector<std::size_t> col_sums;
  std::size_t n = 0;

  std::size_t rows() const noexcept { return row_sums.size(); }
  std::size_t cols() const noexcept { return col_sums.size(); }

  static ContingencyTable build(std::span<const int> pred,
                                std::span<const int> truth) {
    if (pred.size() != truth.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  "prediction has " + std::to_string(pred.size()) +
                      " entries, truth has " + std::to_string(truth.size()));
    }
    if (truth.empty()) {
      throw Error(ErrorCode::LengthMismatch, "empty labelings");
    }
    auto compact = [](std::span<const int> ids) {
      std::map<int, std::size_t> index;
      for (int id : ids) index.emplace(id, 0);
      std::size_t next = 0;
      for (auto& [id, slot] : index) slot = next++;
      return index;
    };
    const auto pred_index = compact(pred);
    const auto truth_index = compact(truth);
    ContingencyTable t;
    t.n = pred.size();
    t.counts.assign(pred_index.size(), std::vector<std::size_t>(truth_index.size(), 0));
    t.row_sums.assign(pred_index.size(), 0);
    t.col_sums.assign(truth_index.size(), 0);
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const std::size_t r = pred_index.at(pred[i]);
      const std::size_t c = truth_index.at(truth[i]);
      ++t.counts[r][c];
      ++t.row_sums[r];
      ++t.col_sums[c];
    }
    return t;
  }
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method
/// with row/column potentials, O(n^3)). Returns, for each row, its column.
inline std::vector<std::size_t> solve_assignment(
    const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a virtual start column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match_col[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_to(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = match_col[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost[r0 - 1][c - 1] - u[r0] - v[c];
        if (reduced < min_to[c]) {
          min_to[c] = reduced;
          way[c] = col0;
        }
        if (min_to[c] < delta) {
          delta = min_to[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match_col[c]] += delta;
          v[c] -= delta;
        } else {
          min_to[c] -= delta;
        }
      }
      col0 = col1;
    } while (match_col[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match_col[col0] = match_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t c = 1; c <= n; ++c) row_to_col[match_col[c] - 1] = c - 1;
  return row_to_col;
}

namespace detail {

inline constexpr std::size_t kNoMatch = std::numeric_limits<std::size_t>::max();

// Best one-to-one cluster->class matching; entry r is the class matched to
// cluster r, or kNoMatch when r landed on a padding column.
inline std::vector<std::size_t> best_matching(const ContingencyTable& t) {
  const std::size_t size = std::max(t.rows(), t.cols());
  std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
  // Hits dominate; the weighted F1 (summing to at most n) breaks ties
  // between matchings with equal hits.
  const double scale = static_cast<double>(t.n) + 1.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const auto hit = static_cast<double>(t.counts[r][c]);
      const double f1 = 2.0 * hit / static_cast<double>(t.row_sums[r] + t.col_sums[c]);
      cost[r][c] = -(hit * scale + static_cast<double>(t.col_sums[c]) * f1);
    }
  }
  const auto assignment = solve_assignment(cost);
  std::vector<std::size_t> out(t.rows(), kNoMatch);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (assignment[r] < t.cols()) out[r] = assignment[r];
  }
  return out;
}

inline std::int64_t pairs(std::size_t k) {
  const auto v = static_cast<std::int64_t>(k);
  return v * (v - 1) / 2;
}

}  // namespace detail

/// Share of objects that land in their matched class under the best
/// one-to-one matching of clusters to classes.
inline double accuracy(std::span<const int> pred, std::span<const int> truth) {
  const auto t = ContingencyTable::build(pred, truth);
  const auto match = detail::best_matching(t);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (match[r] != detail::kNoMatch) hits += t.counts[r][match[r]];
  }
  return static_cast<double>(hits) / static_cast<double>(t.n);
}

/// Class-size weighted F1 over the accuracy matching (best F1 among equally
/// accurate matchings); classes left without a cluster score 0.
inline double f_score(std::span<const int> pred, std::span<const int> truth) {
  const auto t = ContingencyTable::build(pred, truth);
  const auto match = detail::best_matching(t);
  double total = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (match[r] == detail::kNoMatch) continue;
    const std::size_t c = match[r];
    const auto hit = static_cast<double>(t.counts[r][c]);
    if (hit == 0.0) continue;
    const double precision = hit / static_cast<double>(t.row_sums[r]);
    const double recall = hit / static_cast<double>(t.col_sums[c]);
    const double f1 = 2.0 * precision * recall / (precision + recall);
    total += static_cast<double>(t.col_sums[c]) * f1;
  }
  return total / static_cast<double>(t.n);
}

/// Adjusted Rand index. Evaluated in exact integer arithmetic up to the final
/// division; identical trivial partitions (one cluster, or all singletons)
/// score 1.
inline double ari(std::span<const int> pred, std::span<const int> truth) {
  const auto t = ContingencyTable::build(pred, truth);
  __int128 index = 0;
  __int128 sum_rows = 0;
  __int128 sum_cols = 0;
  for (const auto& row : t.counts) {
    for (std::size_t c : row) index += detail::pairs(c);
  }
  for (std::size_t s : t.row_sums) sum_rows += detail::pairs(s);
  for (std::size_t s : t.col_sums) sum_cols += detail::pairs(s);
  const __int128 total = detail::pairs(t.n);
  // (index - E) / (max - E) scaled by 2*total.
  const __int128 numer = 2 * total * index - 2 * sum_rows * sum_cols;
  const __int128 denom = total * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols;
  if (denom == 0) return 1.0;
  return static_cast<double>(static_cast<long double>(numer) /
                             static_cast<long double>(denom));
}

/// Mutual information normalized by the geometric mean of the two entropies
/// (natural log). Two single-cluster labelings score 1; if only one side is
/// single-cluster the score is 0.
inline double nmi(std::span<const int> pred, std::span<const int> truth) {
  const auto t = ContingencyTable::build(pred, truth);
  const auto n = static_cast<double>(t.n);
  auto entropy = [n](const std::vector<std::size_t>& sums) {
    double h = 0.0;
    for (std::size_t s : sums) {
      if (s == 0) continue;
      const double p = static_cast<double>(s) / n;
      h -= p * std::log(p);
    }
    return h;
  };
  if (t.rows() == 1 && t.cols() == 1) return 1.0;
  const double h_pred = entropy(t.row_sums);
  const double h_truth = entropy(t.col_sums);
  if (h_pred <= 0.0 || h_truth <= 0.0) return 0.0;
  double mi = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const auto nij = static_cast<double>(t.counts[r][c]);
      if (nij == 0.0) continue;
      mi += (nij / n) * std::log(n * nij / (static_cast<double>(t.row_sums[r]) *
                                            static_cast<double>(t.col_sums[c])));
    }
  }
  const double value = mi / std::sqrt(h_pred * h_truth);
  return std::clamp(value, 0.0, 1.0);
}

inline std::size_t cluster_count(std::span<const int> pred) {
  return std::set<int>(pred.begin(), pred.end()).size();
}

struct MetricReport {
  double accuracy = 0.0;
  double f_score = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
  std::size_t clusters = 0;
};

inline MetricReport evaluate(std::span<const int> pred, std::span<const int> truth) {
  return {sagdbscan::accuracy(pred, truth), sagdbscan::f_score(pred, truth),
          sagdbscan::ari(pred, truth), sagdbscan::nmi(pred, truth),
          cluster_count(pred)};
}

}  // namespace sagdbscan
