#include <gtest/gtest.h>

#include <cmath>

#include "seqlab/concentration.hpp"
#include "seqlab/error.hpp"
#include "support/oracles.hpp"

namespace seqlab {
namespace {

TEST(QuadraticForm, Summaries) {
  const DiagonalQuadraticForm q({1.0, 3.0, 0.0, 2.0});
  EXPECT_EQ(q.dim(), 4u);
  EXPECT_EQ(q.trace(), 6.0);
  EXPECT_EQ(q.trace_sq(), 14.0);
  EXPECT_EQ(q.spectral_norm(), 3.0);
  EXPECT_EQ(DiagonalQuadraticForm::identity(5).trace(), 5.0);
}

TEST(QuadraticForm, Validation) {
  EXPECT_THROW(DiagonalQuadraticForm({1.0, -1.0}), InvalidConfig);
  EXPECT_THROW(DiagonalQuadraticForm({0.0, 0.0}), InvalidConfig);
  EXPECT_THROW(DiagonalQuadraticForm(std::vector<double>{}), InvalidConfig);
  EXPECT_THROW(DiagonalQuadraticForm({INFINITY}), InvalidConfig);
}

TEST(TailThreshold, HandValues) {
  EXPECT_NEAR(quad_form_tail_threshold(DiagonalQuadraticForm::identity(2), 1.0),
              4.0 + 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(quad_form_tail_threshold(DiagonalQuadraticForm::identity(2), 1.0), 6.8284,
              5e-5);
  const DiagonalQuadraticForm q({1.0, 0.0});
  for (double t : {0.0, 0.25, 4.0})
    EXPECT_NEAR(quad_form_tail_threshold(q, t), 1.0 + 2.0 * std::sqrt(t) + 2.0 * t, 1e-15);
  EXPECT_EQ(quad_form_tail_threshold(DiagonalQuadraticForm({0.5, 2.5}), 0.0), 3.0);
  EXPECT_NEAR(quad_form_tail_threshold(DiagonalQuadraticForm::identity(8), 1.0), 15.657,
              1e-3);
  EXPECT_THROW(quad_form_tail_threshold(q, -1.0), InvalidConfig);
}

TEST(TailThreshold, MonotoneInTAndEntries) {
  const std::vector<double> base{0.3, 1.2, 0.7};
  double prev = -1.0;
  for (double t : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0}) {
    const double cur = quad_form_tail_threshold(DiagonalQuadraticForm(base), t);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<double> bumped = base;
    bumped[i] += 0.1;
    EXPECT_GT(quad_form_tail_threshold(DiagonalQuadraticForm(bumped), 1.0),
              quad_form_tail_threshold(DiagonalQuadraticForm(base), 1.0));
  }
}

TEST(TailCheck, ChiSquareEightDegrees) {
  const DiagonalQuadraticForm q = DiagonalQuadraticForm::identity(8);
  const TailCheck c = mc_tail_check(q, 1.0, 100000, 0);
  const double p = testing::chi_square_even_sf(8, c.threshold);
  EXPECT_NEAR(p, 0.047, 1e-3);
  EXPECT_NEAR(c.empirical_prob, p, 4.0 * std::sqrt(p * (1 - p) / 1e5));
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.bound, std::exp(-1.0), 1e-16);
  EXPECT_EQ(c.reps, 100000u);
}

TEST(TailCheck, ZeroTAlwaysPasses) {
  const TailCheck c = mc_tail_check(DiagonalQuadraticForm({2.0, 0.5, 1.0}), 0.0, 10000, 3);
  EXPECT_EQ(c.threshold, 3.5);
  EXPECT_EQ(c.bound, 1.0);
  EXPECT_TRUE(c.pass);
}

TEST(TailCheck, PassesAcrossSettings) {
  for (std::size_t dim : {8u, 64u})
    for (double t : {0.5, 1.0, 2.0}) {
      std::vector<double> diag(dim);
      for (std::size_t i = 0; i < dim; ++i) diag[i] = 1.0 / (1.0 + i);
      EXPECT_TRUE(mc_tail_check(DiagonalQuadraticForm(diag), t, 20000, 7).pass)
          << dim << " " << t;
    }
}

TEST(TailCheck, DeterministicAndValidated) {
  const DiagonalQuadraticForm q = DiagonalQuadraticForm::identity(4);
  EXPECT_EQ(mc_tail_check(q, 0.5, 10000, 9).exceedances,
            mc_tail_check(q, 0.5, 10000, 9).exceedances);
  EXPECT_THROW(mc_tail_check(q, 0.5, 9999, 9), InvalidConfig);
}

}  // namespace
}  // namespace seqlab
