#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sagdbscan/error.hpp"
#include "sagdbscan/grey_relation.hpp"

namespace sagdbscan {

struct DensityProfile {
  std::vector<double> rho;
  /// Object indices sorted by rho descending, ties by smaller index.
  std::vector<std::size_t> order;
  std::size_t k = 0;

  std::size_t size() const noexcept { return rho.size(); }

  /// The descending density sequence rho'.
  std::vector<double> sorted_desc() const {
    std::vector<double> out;
    out.reserve(order.size());
    for (std::size_t idx : order) out.push_back(rho[idx]);
    return out;
  }

  static DensityProfile from_values(std::vector<double> rho, std::size_t k) {
    DensityProfile p;
    p.order.resize(rho.size());
    std::iota(p.order.begin(), p.order.end(), std::size_t{0});
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&rho](std::size_t a, std::size_t b) { return rho[a] > rho[b]; });
    p.rho = std::move(rho);
    p.k = k;
    return p;
  }
};

/// Grey KNN density: for every object, the sum of its k largest grey degrees
/// to other objects. Neighbors tie-break on smaller index; the object itself
/// is never its own neighbor.
inline DensityProfile grey_knn_density(const GreyMatrix& g, std::size_t k) {
  const std::size_t n = g.size();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::KOutOfRange,
                "k=" + std::to_string(k) + " must lie in [1, " +
                    std::to_string(n > 0 ? n - 1 : 0) + "]");
  }
  std::vector<double> rho(n, 0.0);
  std::vector<std::pair<double, std::size_t>> row;
  row.reserve(n - 1);
  auto closer = [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  };
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.emplace_back(g(i, j), j);
    }
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     row.end(), closer);
    std::sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), closer);
    double sum = 0.0;
    for (std::size_t t = 0; t < k; ++t) sum += row[t].first;
    rho[i] = sum;
  }
  return DensityProfile::from_values(std::move(rho), k);
}

}  // namespace sagdbscan
