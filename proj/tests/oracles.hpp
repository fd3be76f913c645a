// Brute-force reference implementations used only by the tests. None of
// these call into the library's algorithm code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Points = std::vector<std::vector<double>>;

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Reference DBSCAN: core points from full neighbor counts, clusters as
/// union-find components of core points numbered by their smallest core
/// index, border points joined to the lowest-numbered adjacent cluster.
template <class Dist>
std::vector<int> dbscan(std::size_t n, Dist dist, double eps, std::size_t min_pts) {
  std::vector<std::vector<bool>> near(n, std::vector<bool>(n, false));
  std::vector<bool> core(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dist(i, j) <= eps) {
        near[i][j] = true;
        ++count;
      }
    }
    core[i] = count >= min_pts;
  }
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (core[i] && core[j] && near[i][j]) uf.unite(i, j);
    }
  }
  std::map<std::size_t, int> id_of_root;
  std::vector<int> out(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    const auto root = uf.find(i);
    auto it = id_of_root.find(root);
    if (it == id_of_root.end()) {
      it = id_of_root.emplace(root, static_cast<int>(id_of_root.size())).first;
    }
    out[i] = it->second;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    int best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (core[j] && near[i][j] && (best == -1 || out[j] < best)) best = out[j];
    }
    out[i] = best;
  }
  return out;
}

/// Connected components of the graph {i~j : dist <= eps}, numbered by the
/// smallest member index.
template <class Dist>
std::vector<int> eps_components(std::size_t n, Dist dist, double eps) {
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(i, j) <= eps) uf.unite(i, j);
    }
  }
  std::map<std::size_t, int> ids;
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto root = uf.find(i);
    auto it = ids.find(root);
    if (it == ids.end()) it = ids.emplace(root, static_cast<int>(ids.size())).first;
    out[i] = it->second;
  }
  return out;
}

/// ARI by enumerating every object pair (pair-confusion form).
inline double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  long long both = 0, only_a = 0, only_b = 0, neither = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      if (sa && sb) ++both;
      else if (sa) ++only_a;
      else if (sb) ++only_b;
      else ++neither;
    }
  }
  const long long numer = 2 * (both * neither - only_a * only_b);
  const long long denom =
      (both + only_a) * (only_a + neither) + (both + only_b) * (only_b + neither);
  if (denom == 0) return 1.0;
  return static_cast<double>(numer) / static_cast<double>(denom);
}

inline double entropy_of(const std::map<std::vector<int>, std::size_t>& counts,
                         std::size_t n) {
  double h = 0.0;
  for (const auto& [key, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

/// NMI from I = H(A) + H(B) - H(A,B), normalized by sqrt(H(A) H(B)).
inline double nmi_entropy(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::vector<int>, std::size_t> ca, cb, cab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[{a[i]}];
    ++cb[{b[i]}];
    ++cab[{a[i], b[i]}];
  }
  const double ha = entropy_of(ca, a.size());
  const double hb = entropy_of(cb, a.size());
  const double hab = entropy_of(cab, a.size());
  if (ca.size() == 1 && cb.size() == 1) return 1.0;
  if (ca.size() == 1 || cb.size() == 1) return 0.0;
  return (ha + hb - hab) / std::sqrt(ha * hb);
}

/// Accuracy by trying every injective map from predicted clusters to classes
/// (classes padded with "unmatched" slots).
inline double accuracy_exhaustive(const std::vector<int>& pred,
                                  const std::vector<int>& truth) {
  const std::set<int> cluster_set(pred.begin(), pred.end());
  const std::set<int> class_set(truth.begin(), truth.end());
  const std::vector<int> cluster_ids(cluster_set.begin(), cluster_set.end());
  // Slots: every class plus one distinct "unmatched" marker per cluster.
  std::vector<int> slots(class_set.begin(), class_set.end());
  for (std::size_t i = 0; i < cluster_ids.size(); ++i) {
    slots.push_back(-1000000 - static_cast<int>(i));
  }
  std::sort(slots.begin(), slots.end());
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const auto pos = std::lower_bound(cluster_ids.begin(), cluster_ids.end(), pred[i]) -
                       cluster_ids.begin();
      if (slots[static_cast<std::size_t>(pos)] == truth[i]) ++hits;
    }
    best = std::max(best, hits);
  } while (std::next_permutation(slots.begin(), slots.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

/// OLS line by the raw normal equations; returns sum of absolute errors.
inline double ols_abs_error(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) err += std::abs(intercept + slope * x[i] - y[i]);
  return err;
}

/// Descending density sequence whose 5-term trailing mean is exactly
/// piecewise linear: slope `s1` up to position q, slope `s2` after it.
/// rho'_i is linear up to q and obeys rho'_i = rho'_{i-5} + 5 s2 beyond.
inline std::vector<double> knee_sequence(std::size_t n, std::size_t q, double top,
                                         double s1, double s2) {
  // Smoothed curve: slope s1 on [5, q], slope s2 from q+1 on. The two lines
  // cross at q + 1/2, so only the split at q fits both sides exactly.
  // Non-increasing when s2 <= 0.6 * s1 < 0.
  const double jump = (s1 - s2) / 2.0;
  std::vector<double> rho(n + 1);  // 1-based
  for (std::size_t i = 1; i <= n; ++i) {
    if (i <= q) {
      rho[i] = top + s1 * static_cast<double>(i);
    } else {
      rho[i] = rho[i - 5] + 5.0 * s2 + (i == q + 1 ? 5.0 * jump : 0.0);
    }
  }
  return {rho.begin() + 1, rho.end()};
}

}  // namespace oracle
