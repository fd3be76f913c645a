#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sagdbscan/metrics.hpp"

using namespace sagdbscan;

using Labels = std::vector<int>;

TEST(Accuracy, Examples) {
  EXPECT_EQ(accuracy(Labels{1, 1, 0, 0, 2}, Labels{0, 0, 2, 2, 1}), 1.0);
  EXPECT_EQ(accuracy(Labels(20, 0), Labels{0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                           1, 1, 1, 1, 1, 1, 1, 1, 1, 1}),
            0.5);
  EXPECT_DOUBLE_EQ(accuracy(Labels{0, 0, 1, 1, 2}, Labels{0, 0, 1, 1, 1}), 0.8);
}

TEST(Accuracy, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 15;
    Labels pred(n), truth(n);
    const int kp = 1 + static_cast<int>(rng() % 4);
    const int kt = 1 + static_cast<int>(rng() % 3);
    for (auto& v : pred) v = static_cast<int>(rng() % kp) * 7 - 3;
    for (auto& v : truth) v = static_cast<int>(rng() % kt);
    ASSERT_DOUBLE_EQ(accuracy(pred, truth), oracle::accuracy_exhaustive(pred, truth))
        << "trial " << trial;
  }
}

TEST(Accuracy, AtLeastLargestClassShare) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng() % 50;
    Labels pred(n), truth(n);
    for (auto& v : truth) v = static_cast<int>(rng() % 3);
    for (auto& v : pred) v = static_cast<int>(rng() % 4);
    std::vector<std::size_t> class_size(3, 0);
    for (int t : truth) ++class_size[static_cast<std::size_t>(t)];
    const double largest =
        static_cast<double>(*std::max_element(class_size.begin(), class_size.end())) /
        static_cast<double>(n);
    // Put the whole largest class in one cluster to make the bound tight.
    const int big = static_cast<int>(std::max_element(class_size.begin(), class_size.end()) -
                                     class_size.begin());
    for (std::size_t i = 0; i < n; ++i) {
      if (truth[i] == big) pred[i] = 9;
    }
    EXPECT_GE(accuracy(pred, truth) + 1e-15, largest);
  }
}

TEST(FScore, Examples) {
  EXPECT_DOUBLE_EQ(f_score(Labels{3, 3, 1}, Labels{0, 0, 1}), 1.0);
  EXPECT_NEAR(f_score(Labels{0, 0, 1, 1, 2}, Labels{0, 0, 1, 1, 1}), 0.88, 1e-12);
  for (std::size_t n : {2u, 5u, 13u}) {
    Labels singletons(n), one(n, 0);
    for (std::size_t i = 0; i < n; ++i) singletons[i] = static_cast<int>(i);
    EXPECT_NEAR(f_score(singletons, one), 2.0 / (static_cast<double>(n) + 1.0), 1e-12);
  }
}

TEST(Ari, Examples) {
  EXPECT_EQ(ari(Labels{0, 0, 1, 2}, Labels{5, 5, 7, 6}), 1.0);
  EXPECT_EQ(ari(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1}), -0.5);
  EXPECT_EQ(ari(Labels{0, 0, 0}, Labels{1, 1, 1}), 1.0);
}

TEST(Nmi, Examples) {
  EXPECT_NEAR(nmi(Labels{0, 0, 1, 1, 2, 2}, Labels{2, 2, 0, 0, 1, 1}), 1.0, 1e-12);
  // Product contingency table: every cell 1.
  EXPECT_NEAR(nmi(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1}), 0.0, 1e-12);
  // Table rows: pred0 -> {truth0: 2}, pred1 -> {truth0: 1, truth1: 1}.
  const double h_pred = std::log(2.0);
  const double h_truth = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  const double mi = 0.5 * std::log(4.0 * 2.0 / (2.0 * 3.0)) +
                    0.25 * std::log(4.0 * 1.0 / (2.0 * 3.0)) +
                    0.25 * std::log(4.0 * 1.0 / (2.0 * 1.0));
  EXPECT_NEAR(nmi(Labels{0, 0, 1, 1}, Labels{0, 0, 0, 1}), mi / std::sqrt(h_pred * h_truth),
              1e-12);
  EXPECT_EQ(nmi(Labels{4, 4, 4}, Labels{1, 1, 1}), 1.0);
  EXPECT_EQ(nmi(Labels{4, 4, 4}, Labels{1, 2, 1}), 0.0);
}

TEST(Metrics, OracleEquivalenceOnSmallLabelings) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    Labels a(n), b(n);
    const int ka = 1 + static_cast<int>(rng() % 5);
    const int kb = 1 + static_cast<int>(rng() % 5);
    for (auto& v : a) v = static_cast<int>(rng() % ka);
    for (auto& v : b) v = static_cast<int>(rng() % kb);
    ASSERT_EQ(ari(a, b), oracle::ari_pairs(a, b)) << "trial " << trial;
    ASSERT_NEAR(nmi(a, b), std::clamp(oracle::nmi_entropy(a, b), 0.0, 1.0), 1e-12)
        << "trial " << trial;
  }
}

TEST(Metrics, InvariantUnderRelabelingAndJointPermutation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 40;
    Labels pred(n), truth(n);
    for (auto& v : pred) v = static_cast<int>(rng() % 4);
    for (auto& v : truth) v = static_cast<int>(rng() % 3);
    Labels relabeled(pred);
    for (auto& v : relabeled) v = 10 - 3 * v;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Labels pp(n), tp(n);
    for (std::size_t i = 0; i < n; ++i) {
      pp[i] = pred[perm[i]];
      tp[i] = truth[perm[i]];
    }
    const auto base = evaluate(pred, truth);
    for (const auto& other : {evaluate(relabeled, truth), evaluate(pp, tp)}) {
      EXPECT_DOUBLE_EQ(other.accuracy, base.accuracy);
      EXPECT_NEAR(other.f_score, base.f_score, 1e-12);
      EXPECT_DOUBLE_EQ(other.ari, base.ari);
      EXPECT_NEAR(other.nmi, base.nmi, 1e-12);
      EXPECT_EQ(other.clusters, base.clusters);
    }
  }
}

TEST(Metrics, AriOfIndependentPartitionsIsNearZero) {
  std::mt19937_64 rng(55);
  double total = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Labels a(200), b(200);
    for (auto& v : a) v = static_cast<int>(rng() % 4);
    for (auto& v : b) v = static_cast<int>(rng() % 4);
    total += ari(a, b);
  }
  EXPECT_LT(std::abs(total / 100.0), 0.1);
}

TEST(Metrics, LengthMismatch) {
  try {
    accuracy(Labels{0, 1}, Labels{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  EXPECT_THROW(ari(Labels{0}, Labels{}), Error);
  EXPECT_THROW(nmi(Labels{0}, Labels{0, 0}), Error);
  EXPECT_THROW(f_score(Labels{0}, Labels{0, 0}), Error);
}

TEST(ClusterCount, Examples) {
  EXPECT_EQ(cluster_count(Labels{0, 0, 0}), 1u);
  EXPECT_EQ(cluster_count(Labels{0, 1, 2, 1}), 3u);
}

TEST(Assignment, SolvesSmallProblemsOptimally) {
  std::mt19937_64 rng(90);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost) {
      for (auto& c : row) c = static_cast<double>(rng() % 20) - 10.0;
    }
    const auto sol = solve_assignment(cost);
    double got = 0.0;
    for (std::size_t r = 0; r < n; ++r) got += cost[r][sol[r]];
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = 1e300;
    do {
      double c = 0.0;
      for (std::size_t r = 0; r < n; ++r) c += cost[r][perm[r]];
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    ASSERT_EQ(got, best);
  }
}
