#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "detbal/action.hpp"

using namespace detbal;

namespace {

TransitionMatrix two_by_two(double w12, double w21) {
  TransitionMatrix w(2, TransitionKind::density);
  w(0, 1) = w12;
  w(1, 0) = w21;
  return w;
}

struct Instance {
  TransitionMatrix transitions;
  std::vector<double> weights;
};

// Sparse Poisson counts so that one-sided and empty pairs both occur.
Instance random_instance(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> size(2, 25);
  std::poisson_distribution<int> counts(1.5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = size(gen);
  Instance inst{TransitionMatrix(n, TransitionKind::counts), std::vector<double>(n)};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) inst.transitions(x, y) = counts(gen);
  }
  for (double& v : inst.weights) v = u(gen) + 1e-3;
  return inst;
}

}  // namespace

TEST(Action, HandExamples) {
  auto a = action(two_by_two(1, 1), std::vector<double>{0.5, 0.5});
  EXPECT_EQ(a.s, 0.0);
  EXPECT_EQ(a.k_terms, 1u);

  a = action(two_by_two(1, 0), std::vector<double>{0.5, 0.5});
  EXPECT_EQ(a.s, 1.0);
  EXPECT_EQ(a.k_terms, 1u);

  // a = 2 * 2/3 = 4/3, b = 1/3, (a - b) / (a + b) = 3/5
  a = action(two_by_two(2, 1), std::vector<double>{1.0 / 3, 2.0 / 3});
  EXPECT_NEAR(a.s, 0.36, 1e-12);
  EXPECT_EQ(a.k_terms, 1u);
}

TEST(Action, DiagonalIgnoredAndDegenerate) {
  TransitionMatrix w(3, TransitionKind::counts);
  w(0, 0) = w(1, 1) = w(2, 2) = 5;
  const auto a = action(w, std::vector<double>{0.2, 0.3, 0.5});
  EXPECT_TRUE(a.degenerate());
  EXPECT_EQ(a.s, 0.0);
  EXPECT_THROW(action(w, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST(BalanceResiduals, Examples) {
  const auto r = balance_residuals(two_by_two(2, 1), std::vector<double>{1.0 / 3, 2.0 / 3});
  EXPECT_NEAR(r(0, 1), 0.6, 1e-15);
  EXPECT_NEAR(r(1, 0), -0.6, 1e-15);

  const auto balanced = balance_residuals(two_by_two(1, 1), std::vector<double>{0.5, 0.5});
  EXPECT_EQ(balanced, SquareMatrix(2));

  std::mt19937_64 gen(1);
  auto inst = random_instance(gen);
  std::fill(inst.weights.begin(), inst.weights.end(), 0.0);
  EXPECT_EQ(balance_residuals(inst.transitions, inst.weights), SquareMatrix(inst.weights.size()));
  EXPECT_TRUE(action(inst.transitions, inst.weights).degenerate());
}

TEST(BalanceResiduals, AntisymmetricAndConsistentWithAction) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(gen);
    const auto r = balance_residuals(inst.transitions, inst.weights);
    const auto a = action(inst.transitions, inst.weights);
    double sum = 0.0;
    for (std::size_t x = 0; x < r.size(); ++x) {
      EXPECT_EQ(r(x, x), 0.0);
      for (std::size_t y = x + 1; y < r.size(); ++y) {
        EXPECT_EQ(r(x, y), -r(y, x));
        sum += r(x, y) * r(x, y);
      }
    }
    if (a.k_terms > 0) EXPECT_NEAR(sum / static_cast<double>(a.k_terms), a.s, 1e-14);
  }
}

TEST(FixedPointResidual, Identity) {
  TransitionMatrix id(4, TransitionKind::density);
  for (std::size_t i = 0; i < 4; ++i) id(i, i) = 1.0;
  EXPECT_EQ(fixed_point_residual(id, std::vector<double>{0.1, 0.2, 0.3, 0.4}), 0.0);
  EXPECT_THROW(fixed_point_residual(id, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST(FixedPointResidual, ExactBalancePair) {
  // W(x,y) = M(x,y) w(x) with M symmetric balances w exactly; after column
  // normalization w-hat(y) = C(y) w(y) is a fixed point of W-hat.
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 24;
    std::vector<double> w(n);
    for (double& v : w) v = u(gen);
    TransitionMatrix t(n, TransitionKind::density);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        const double m = u(gen);
        t(x, y) = m * w[x];
        t(y, x) = m * w[y];
      }
    }
    EXPECT_LE(action(t, w).s, 1e-28);
    const auto norm = column_normalize(t);
    std::vector<double> w_hat(n);
    double total = 0.0;
    for (std::size_t y = 0; y < n; ++y) total += w_hat[y] = norm.column_sums[y] * w[y];
    for (double& v : w_hat) v /= total;
    EXPECT_LE(fixed_point_residual(norm.normalized, w_hat), 1e-12);
  }
}

TEST(FixedPointResidual, MatchesDirectProduct) {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 10;
    TransitionMatrix raw(n, TransitionKind::density);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) raw(x, y) = u(gen);
    }
    const auto t = column_normalize(raw).normalized;
    std::vector<double> w(n);
    for (double& v : w) v = u(gen);
    double worst = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      long double image = 0.0L;
      for (std::size_t x = 0; x < n; ++x) image += static_cast<long double>(t(y, x)) * w[x];
      worst = std::max(worst, static_cast<double>(std::fabs(static_cast<long double>(w[y]) - image)));
    }
    EXPECT_NEAR(fixed_point_residual(t, w), worst, 1e-15);
  }
}

TEST(ActionProperties, BoundsScaleAndNormalizationInvariance) {
  std::mt19937_64 gen(20);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = random_instance(gen);
    const auto a = action(inst.transitions, inst.weights);
    ASSERT_GE(a.s, 0.0);
    ASSERT_LE(a.s, 1.0);
    ASSERT_LE(a.k_terms, inst.weights.size() * (inst.weights.size() - 1) / 2);

    for (double lambda : {1e-6, 1.0, 1e6}) {
      auto scaled = inst.weights;
      for (double& v : scaled) v *= lambda;
      ASSERT_NEAR(action(inst.transitions, scaled).s, a.s, 1e-14);
    }

    const auto norm = column_normalize(inst.transitions);
    std::vector<double> w_hat(inst.weights.size());
    for (std::size_t y = 0; y < w_hat.size(); ++y) w_hat[y] = norm.column_sums[y] * inst.weights[y];
    ASSERT_NEAR(action(norm.normalized, w_hat).s, a.s, 1e-12);
  }
}

TEST(ActionProperties, ZeroExactlyWhenBalanced) {
  TransitionMatrix t(3, TransitionKind::density);
  const std::vector<double> w{0.25, 0.25, 0.5};
  t(0, 1) = t(1, 0) = 0.7;
  t(0, 2) = 0.2;  // 0.2 * 0.5 == 0.4 * 0.25
  t(2, 0) = 0.4;
  EXPECT_EQ(action(t, w).s, 0.0);
  EXPECT_EQ(action(t, w).k_terms, 2u);
  t(2, 0) = 0.41;
  EXPECT_GT(action(t, w).s, 0.0);
}

TEST(ActionDelta, NoOpAndHandExample) {
  const auto t = two_by_two(2, 1);
  const std::vector<double> w{1.0 / 3, 2.0 / 3};
  PairTermCache cache(t, w);
  EXPECT_NEAR(action_delta(t, w, 0, w[0], cache).s, 0.36, 1e-15);

  const auto moved = action_delta(t, w, 0, 2.0 / 3, cache);
  EXPECT_NEAR(moved.s, action(t, std::vector<double>{2.0 / 3, 2.0 / 3}).s, 1e-10);
}

TEST(ActionDelta, StaleCacheRejected) {
  const auto t = two_by_two(2, 1);
  PairTermCache cache(t, {0.4, 0.6});
  EXPECT_THROW(action_delta(t, std::vector<double>{0.5, 0.5}, 0, 0.3, cache), StaleCacheError);
  EXPECT_THROW(action_delta(two_by_two(3, 1), std::vector<double>{0.4, 0.6}, 0, 0.3, cache), StaleCacheError);
}

TEST(ActionDelta, MatchesFullRecomputationOverRandomEdits) {
  std::mt19937_64 gen(30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int block = 0; block < 10; ++block) {
    const auto inst = random_instance(gen);
    PairTermCache cache(inst.transitions, inst.weights);
    std::vector<double> w = inst.weights;
    std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
    for (int edit = 0; edit < 1000; ++edit) {
      const std::size_t x = pick(gen);
      // occasionally zero a weight so that K changes
      const double value = u(gen) < 0.05 ? 0.0 : u(gen);
      const auto predicted = action_delta(inst.transitions, w, x, value, cache);
      w[x] = value;
      const auto full = action(inst.transitions, w);
      ASSERT_NEAR(predicted.s, full.s, 1e-10);
      ASSERT_EQ(predicted.k_terms, full.k_terms);
      if (u(gen) < 0.5) {
        cache.commit();
      } else {
        cache.refresh();  // drops the pending edit
        w = {cache.weights().begin(), cache.weights().end()};
      }
    }
  }
}

TEST(PairTermCache, DeltaSignMatchesFullDifference) {
  std::mt19937_64 gen(31);
  const auto inst = random_instance(gen);
  PairTermCache cache(inst.transitions, inst.weights);
  const double before = action(inst.transitions, inst.weights).s;
  auto w = inst.weights;
  w[0] *= 1.3;
  const auto p = cache.propose(0, w[0]);
  EXPECT_NEAR(p.delta, action(inst.transitions, w).s - before, 1e-12);
  cache.rescale(7.0);
  EXPECT_NEAR(cache.value().s, before, 1e-14);
}
