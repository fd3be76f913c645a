#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "sagdbscan/density.hpp"

using namespace sagdbscan;

namespace {

Dataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> values(n * dim);
  for (auto& v : values) v = u(rng);
  return Dataset(n, dim, std::move(values));
}

}  // namespace

TEST(GreyKnnDensity, IdenticalObjects) {
  const Dataset d(6, 2, std::vector<double>(12, 3.5));
  const auto profile = grey_knn_density(grey_matrix(d), 2);
  for (double r : profile.rho) EXPECT_EQ(r, 2.0);
  EXPECT_EQ(profile.order, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
}

TEST(GreyKnnDensity, OneDimensionalHandValues) {
  const Dataset d(3, 1, {0, 1, 3});
  const auto profile = grey_knn_density(grey_matrix(d), 1);
  EXPECT_NEAR(profile.rho[0], 0.5, 1e-12);
  EXPECT_NEAR(profile.rho[1], 0.5, 1e-12);
  EXPECT_NEAR(profile.rho[2], 1.0 / 3.0, 1e-12);
  EXPECT_EQ(profile.order, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GreyKnnDensity, MatchesRowSortOracle) {
  const auto d = random_dataset(40, 3, 8);
  const auto g = grey_matrix(d);
  const auto profile = grey_knn_density(g, 5);
  for (std::size_t i = 0; i < 40; ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < 40; ++j) {
      if (j != i) row.push_back(g(i, j));
    }
    std::sort(row.begin(), row.end(), std::greater<>());
    double expected = 0.0;
    for (std::size_t t = 0; t < 5; ++t) expected += row[t];
    EXPECT_EQ(profile.rho[i], expected) << i;
  }
  for (std::size_t t = 1; t < 40; ++t) {
    EXPECT_GE(profile.rho[profile.order[t - 1]], profile.rho[profile.order[t]]);
  }
}

TEST(GreyKnnDensity, KOutOfRange) {
  const auto g = grey_matrix(random_dataset(10, 2, 1));
  for (std::size_t k : {std::size_t{0}, std::size_t{10}, std::size_t{11}}) {
    try {
      grey_knn_density(g, k);
      FAIL() << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::KOutOfRange);
    }
  }
  EXPECT_NO_THROW(grey_knn_density(g, 9));
}

TEST(GreyKnnDensity, NonDecreasingInKAndBoundedByK) {
  const auto g = grey_matrix(random_dataset(60, 2, 12));
  auto previous = grey_knn_density(g, 1);
  for (std::size_t k = 2; k < 20; ++k) {
    const auto current = grey_knn_density(g, k);
    for (std::size_t i = 0; i < 60; ++i) {
      EXPECT_GE(current.rho[i], previous.rho[i]);
      EXPECT_GT(current.rho[i], 0.0);
      EXPECT_LT(current.rho[i], static_cast<double>(k));
    }
    previous = current;
  }
}

TEST(GreyKnnDensity, ReachesKOnlyWithKDuplicates) {
  // Object 0 has three exact copies; object 4 has none.
  const Dataset d(6, 2, {1, 1, 1, 1, 1, 1, 1, 1, 5, 5, 9, 0});
  const auto profile = grey_knn_density(grey_matrix(d), 3);
  EXPECT_EQ(profile.rho[0], 3.0);
  EXPECT_LT(profile.rho[4], 3.0);
}

TEST(GreyKnnDensity, RemoteOutlierLeavesDensitiesUnchanged) {
  auto base = random_dataset(30, 2, 21);
  auto values = base.values();
  values.push_back(1e6);
  values.push_back(-1e6);
  const Dataset extended(31, 2, values);
  const auto before = grey_knn_density(grey_matrix(base), 4);
  const auto after = grey_knn_density(grey_matrix(extended), 4);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(after.rho[i], before.rho[i]);
}
