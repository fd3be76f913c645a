#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sagdbscan/error.hpp"

namespace sagdbscan {

/// Dense row-major matrix of n objects by N features, plus optional
/// ground-truth class ids. Immutable after construction.
class Dataset {
 public:
  Dataset(std::size_t rows, std::size_t cols, std::vector<double> values,
          std::optional<std::vector<int>> labels = std::nullopt,
          std::string name = {})
      : rows_(rows),
        cols_(cols),
        values_(std::move(values)),
        labels_(std::move(labels)),
        name_(std::move(name)) {
    if (rows_ == 0 || cols_ == 0) {
      throw Error(ErrorCode::DimensionMismatch,
                  "dataset needs at least one row and one column");
    }
    if (values_.size() != rows_ * cols_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "value count " + std::to_string(values_.size()) +
                      " != rows*cols " + std::to_string(rows_ * cols_));
    }
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      if (!std::isfinite(values_[idx])) {
        throw Error(ErrorCode::NonFiniteValue,
                    "row " + std::to_string(idx / cols_ + 1) + " column " +
                        std::to_string(idx % cols_ + 1));
      }
    }
    if (labels_) {
      if (labels_->size() != rows_) {
        throw Error(ErrorCode::LengthMismatch,
                    "label count differs from row count");
      }
      for (int label : *labels_) {
        if (label < 0) {
          throw Error(ErrorCode::InvalidParameter, "labels must be >= 0");
        }
      }
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }
  double at(std::size_t i, std::size_t j) const noexcept {
    return values_[i * cols_ + j];
  }
  const std::vector<double>& values() const noexcept { return values_; }
  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::optional<std::vector<int>>& labels() const noexcept {
    return labels_;
  }
  const std::string& name() const noexcept { return name_; }

  /// Rows picked by `indices`, in the order given.
  Dataset subset(std::span<const std::size_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size() * cols_);
    std::optional<std::vector<int>> out_labels;
    if (labels_) out_labels.emplace();
    for (std::size_t i : indices) {
      auto r = row(i);
      out.insert(out.end(), r.begin(), r.end());
      if (labels_) out_labels->push_back((*labels_)[i]);
    }
    return Dataset(indices.size(), cols_, std::move(out), std::move(out_labels),
                   name_);
  }

  /// Per-feature min-max scaling to [0,1]. Constant features map to 0.
  Dataset min_max_normalized() const {
    std::vector<double> lo(cols_), hi(cols_);
    for (std::size_t j = 0; j < cols_; ++j) lo[j] = hi[j] = at(0, j);
    for (std::size_t i = 1; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        lo[j] = std::min(lo[j], at(i, j));
        hi[j] = std::max(hi[j], at(i, j));
      }
    }
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const double range = hi[j] - lo[j];
        out[i * cols_ + j] = range > 0.0 ? (at(i, j) - lo[j]) / range : 0.0;
      }
    }
    return Dataset(rows_, cols_, std::move(out), labels_, name_);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  std::optional<std::vector<int>> labels_;
  std::string name_;
};

enum class Origin { DenseCore, AssignedRemainder };

inline constexpr int kUnassigned = -1;

/// Per-object cluster ids. -1 marks an object without a cluster yet (or DBSCAN
/// noise before remainder assignment).
struct Clustering {
  std::vector<int> assignments;
  std::vector<Origin> origin;

  Clustering() = default;
  explicit Clustering(std::size_t n)
      : assignments(n, kUnassigned), origin(n, Origin::DenseCore) {}
  Clustering(std::vector<int> ids, std::vector<Origin> origins)
      : assignments(std::move(ids)), origin(std::move(origins)) {
    if (assignments.size() != origin.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  "assignment and origin lengths differ");
    }
  }

  std::size_t size() const noexcept { return assignments.size(); }

  bool is_final() const noexcept {
    for (int id : assignments) {
      if (id == kUnassigned) return false;
    }
    return true;
  }
};

}  // namespace sagdbscan
