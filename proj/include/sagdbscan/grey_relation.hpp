#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sagdbscan/dataset.hpp"
#include "sagdbscan/error.hpp"

namespace sagdbscan {

namespace detail {

// Assumes equal lengths and finite entries.
inline double grey_degree_unchecked(std::span<const double> a,
                                    std::span<const double> b) {
  const std::size_t n = a.size();
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double prev2 = 0.0;
  double prev1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double diff = a[k] - b[k];
    d0 += std::abs(diff);
    if (k >= 1) d1 += std::abs(diff - prev1);
    if (k >= 2) d2 += std::abs(diff - 2.0 * prev1 + prev2);
    prev2 = prev1;
    prev1 = diff;
  }
  const double len = static_cast<double>(n);
  double denom = 1.0 + d0 / len;
  // Empty sums (N=1 for the first difference, N<=2 for the second) add 0.
  if (n >= 2) denom += d1 / (len - 1.0);
  if (n >= 3) denom += d2 / (len - 2.0);
  return 1.0 / denom;
}

}  // namespace detail

/// B-style grey relationship degree of two equal-length sequences, in (0,1].
/// Combines the absolute sums of the pointwise, first-difference and
/// second-difference gaps of `a - b`, each averaged over its term count.
inline double grey_degree(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::DimensionMismatch,
                "grey_degree needs two non-empty vectors of equal length (" +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!std::isfinite(a[k]) || !std::isfinite(b[k])) {
      throw Error(ErrorCode::NonFiniteInput,
                  "non-finite entry at position " + std::to_string(k));
    }
  }
  return detail::grey_degree_unchecked(a, b);
}

/// Symmetric n x n matrix of grey degrees with unit diagonal. Only the strict
/// upper triangle is stored.
class GreyMatrix {
 public:
  GreyMatrix() = default;
  explicit GreyMatrix(std::size_t n)
      : n_(n), packed_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 1.0;
    return packed_[slot(i, j)];
  }

  /// 1 - degree; a dissimilarity in [0,1).
  double dissimilarity(std::size_t i, std::size_t j) const noexcept {
    return 1.0 - (*this)(i, j);
  }

  void set(std::size_t i, std::size_t j, double value) noexcept {
    if (i != j) packed_[slot(i, j)] = value;
  }

  /// Row i written into `out` (resized to n).
  void row(std::size_t i, std::vector<double>& out) const {
    out.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = (*this)(i, j);
  }

 private:
  std::size_t slot(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    // Rows 0..i-1 of the strict upper triangle hold i*n - i*(i+1)/2 entries.
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> packed_;
};

/// All pairwise grey degrees of the dataset rows. O(n^2 N).
inline GreyMatrix grey_matrix(const Dataset& data) {
  const std::size_t n = data.rows();
  GreyMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = data.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      g.set(i, j, detail::grey_degree_unchecked(xi, data.row(j)));
    }
  }
  return g;
}

}  // namespace sagdbscan
