#include <gtest/gtest.h>

#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/estimators.hpp"
#include "seqlab/rng.hpp"
#include "support/oracles.hpp"

namespace seqlab {
namespace {

const NoiseProfile kUnit = NoiseProfile::constant(1.0);
const Ball kBall(DecaySequence::power(1.0), 1.0);

TEST(MinimaxWeights, HandValues) {
  const DiagonalWeights w = minimax_weights(kBall, kUnit, 1.0, 4);
  EXPECT_EQ(w.family, WeightFamily::minimax);
  EXPECT_NEAR(w[0], 3.0 / 7.0, 1e-15);
  EXPECT_NEAR(w[1], 5.0 / 41.0, 1e-15);
  EXPECT_TRUE(w.warnings.empty());
}

TEST(MinimaxWeights, Limits) {
  const DiagonalWeights small_eps = minimax_weights(kBall, kUnit, 1e-9, 20);
  for (double l : small_eps.lambda) EXPECT_NEAR(l, 1.0, 1e-6);
  const DiagonalWeights tiny_ball =
      minimax_weights(Ball(DecaySequence::power(1.0), 1e-14), kUnit, 1.0, 20);
  for (double l : tiny_ball.lambda) EXPECT_LT(l, 1e-13);
}

TEST(MinimaxWeights, MonotoneInEpsilonAndInUnitInterval) {
  const Ball ball(DecaySequence::power(0.7), 2.0);
  const NoiseProfile sigma = NoiseProfile::power(1.0, 0.5);
  DiagonalWeights prev = minimax_weights(ball, sigma, 1e-3, 100);
  for (double eps : {1e-2, 0.1, 1.0, 10.0}) {
    const DiagonalWeights cur = minimax_weights(ball, sigma, eps, 100);
    for (std::size_t j = 0; j < 100; ++j) {
      EXPECT_LT(cur[j], prev[j]);
      EXPECT_GE(cur[j], 0.0);
      EXPECT_LE(cur[j], 1.0);
    }
    prev = cur;
  }
}

TEST(MinimaxWeights, WarnsWhenMonotonicityFails) {
  const DiagonalWeights w =
      minimax_weights(kBall, NoiseProfile::power(1.0, -3.0), 0.5, 10);
  ASSERT_EQ(w.warnings.size(), 1u);
  EXPECT_NE(w.warnings[0].find("j = 2"), std::string::npos);
}

TEST(MinimaxWeights, Errors) {
  EXPECT_THROW(minimax_weights(kBall, kUnit, 0.0, 4), InvalidConfig);
  EXPECT_THROW(minimax_weights(kBall, NoiseProfile::table({1, 0, 1}), 1.0, 3),
               InvalidConfig);
}

TEST(AsymptoticWeights, HandValues) {
  const DiagonalWeights w = asymptotic_weights(1.0, 1.0, kUnit, 1.0, 3);
  EXPECT_NEAR(w[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(w[1], 0.2, 1e-15);
  EXPECT_THROW(asymptotic_weights(0.0, 1.0, kUnit, 1.0, 3), InvalidConfig);
  EXPECT_THROW(asymptotic_weights(1.0, 1.0, kUnit, -1.0, 3), InvalidConfig);
}

TEST(AsymptoticWeights, Limits) {
  for (double l : asymptotic_weights(2.0, 1.0, kUnit, 1e-12, 30).lambda)
    EXPECT_NEAR(l, 1.0, 1e-6);
}

TEST(AsymptoticWeights, StrictlyDecreasing) {
  const DiagonalWeights w = asymptotic_weights(1.0, 1.0, kUnit, 0.01, 10000);
  for (std::size_t j = 1; j < w.size(); ++j) ASSERT_LT(w[j], w[j - 1]) << j;
}

TEST(PinskerMu, SingleActiveCoordinate) {
  for (std::size_t n : {2u, 3u, 50u}) {
    const double mu = pinsker_mu({1.0, 1.0, 1.0, n});
    EXPECT_NEAR(mu, 0.5, 1e-12) << n;
  }
}

TEST(PinskerMu, ResidualAndBruteForceBisection) {
  for (double beta : {0.5, 1.0, 2.0})
    for (double eps : {0.3, 0.05}) {
      const PinskerConfig cfg{beta, 0.7, eps, 4000};
      const double mu = pinsker_mu(cfg);
      EXPECT_LE(std::abs(pinsker_capacity(cfg, mu) - cfg.radius), 1e-10);
      // Independent check: the explicit capacity sum on both sides.
      const auto cap = [&](double m) {
        double s = 0.0;
        for (std::size_t j = 1; j <= cfg.n; ++j) {
          const double b = std::pow(double(j), beta);
          s += b * b * std::max(0.0, 1.0 / (m * b) - 1.0);
        }
        return eps * eps * s;
      };
      EXPECT_GT(cap(mu * (1 - 1e-6)), cfg.radius);
      EXPECT_LT(cap(mu * (1 + 1e-6)), cfg.radius);
    }
}

TEST(PinskerMu, SmallRadiusApproachesOne) {
  const double mu = pinsker_mu({1.0, 1e-9, 1.0, 10});
  EXPECT_LT(mu, 1.0);
  EXPECT_GT(mu, 1.0 - 1e-8);
}

TEST(PinskerMu, CapacityStrictlyDecreasing) {
  const PinskerConfig cfg{1.5, 1.0, 0.1, 200};
  const double lo = std::pow(200.0, -1.5);
  double prev = pinsker_capacity(cfg, lo);
  for (int i = 1; i < 200; ++i) {
    const double mu = lo * std::pow(1.0 / lo, i / 200.0);
    const double cur = pinsker_capacity(cfg, mu);
    EXPECT_LT(cur, prev) << mu;
    prev = cur;
  }
  EXPECT_EQ(pinsker_capacity(cfg, 1.0), 0.0);
}

TEST(PinskerMu, TruncationInsufficient) {
  EXPECT_THROW(pinsker_mu({1.0, 100.0, 0.01, 5}), TruncationInsufficient);
  EXPECT_THROW(pinsker_mu({1.0, 0.0, 0.01, 5}), InvalidConfig);
}

TEST(PinskerWeights, Values) {
  const DiagonalWeights w = pinsker_weights(1.0, 0.5, 5);
  EXPECT_EQ(w.lambda, (Vector{0.5, 0.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(w.mu, 0.5);
  for (double l : pinsker_weights(2.0, 0.0, 7).lambda) EXPECT_EQ(l, 1.0);
  for (double l : pinsker_weights(0.3, 1.0, 7).lambda) EXPECT_EQ(l, 0.0);
  for (double l : pinsker_weights(0.3, 3.0, 7).lambda) EXPECT_EQ(l, 0.0);
}

TEST(ApplyWeights, Cases) {
  const Vector y{2.0, -1.0, 4.0};
  EXPECT_EQ(apply_weights(DiagonalWeights::custom({1, 1, 1}), y), y);
  EXPECT_EQ(apply_weights(DiagonalWeights::custom({0, 0, 0}), y), Vector(3, 0.0));
  EXPECT_EQ(apply_weights(DiagonalWeights::custom({0.5}), Vector{2.0}), Vector{1.0});
  EXPECT_EQ(apply_weights(DiagonalWeights::custom({0.5}), y), (Vector{1.0, 0.0, 0.0}));
}

TEST(QuadraticPenalty, TelescopesOnWorstCaseSignal) {
  for (std::size_t n : {1u, 9u, 128u}) {
    const Vector theta = worst_case_signal(kBall, n);
    EXPECT_NEAR(quadratic_penalty(theta, kBall, kUnit, BallPenalty{}), double(n),
                1e-10 * n);
  }
  EXPECT_EQ(quadratic_penalty(Vector(4, 0.0), kBall, kUnit, BallPenalty{}), 0.0);
  EXPECT_EQ(quadratic_penalty(Vector(4, 0.0), kBall, kUnit, PowerLawPenalty{1.0}), 0.0);
}

TEST(QuadraticPenalty, PowerLawForm) {
  // (2 alpha P0)^-1 sum j^(1 + 2 alpha) x_j^2 with alpha = 1, P0 = 1.
  EXPECT_NEAR(quadratic_penalty(Vector{1.0, 0.5}, kBall, kUnit, PowerLawPenalty{1.0}),
              0.5 * (1.0 + 8.0 * 0.25), 1e-15);
}

TEST(QuadraticPenalty, PenalisedFitIsTheFilter) {
  // argmin_x (y - x)^2 / (eps sigma)^2 + penalty(x) = lambda_1 y for y = (1).
  const auto objective = [](double x) {
    return (1.0 - x) * (1.0 - x) + quadratic_penalty(Vector{x}, kBall, kUnit, BallPenalty{});
  };
  EXPECT_NEAR(testing::ternary_argmin(objective, -2.0, 2.0), 3.0 / 7.0, 1e-7);
  EXPECT_NEAR(testing::slope_bisection_argmin(objective, -2.0, 2.0), 3.0 / 7.0, 1e-12);
}

TEST(QuadraticPenalty, PowerLawFitIsTheAsymptoticFilter) {
  const double eps = 0.2, y = 0.9;
  const std::size_t j = 3;
  const DiagonalWeights w = asymptotic_weights(1.0, 1.0, kUnit, eps, j);
  const auto objective = [&](double x) {
    Vector v(j, 0.0);
    v[j - 1] = x;
    return (y - x) * (y - x) / (eps * eps) +
           quadratic_penalty(v, kBall, kUnit, PowerLawPenalty{1.0});
  };
  EXPECT_NEAR(testing::slope_bisection_argmin(objective, -2.0, 2.0), w[j - 1] * y, 1e-12);
}

}  // namespace
}  // namespace seqlab
