#include "dsn/diversity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dsn/tolerances.hpp"
#include "test_support.hpp"

using dsn::Population;
using dsn::ProportionVector;
using dsn::QParam;
using dsn::SquareMatrix;

namespace {

TEST(HillNumber, UniformGivesCategoryCountAtEveryQ) {
  const ProportionVector p = ProportionVector::uniform(3);
  for (const QParam& q : dsn::testing::full_q_grid())
    EXPECT_NEAR(dsn::hill_number(p, q), 3.0, 1e-9);
}

TEST(HillNumber, RichnessCountsNonzeroEntries) {
  EXPECT_DOUBLE_EQ(dsn::hill_number(ProportionVector({0.8, 0.1, 0.1}), QParam(0)), 3.0);
  EXPECT_DOUBLE_EQ(dsn::hill_number(ProportionVector({0.5, 0.5, 0.0}), QParam(0)), 2.0);
}

TEST(HillNumber, InverseSimpsonAndBergerParker) {
  const ProportionVector p({0.8, 0.1, 0.1});
  EXPECT_NEAR(dsn::hill_number(p, QParam(2)), 1.0 / 0.66, 1e-12);
  EXPECT_NEAR(dsn::hill_number(p, QParam::infinity()), 1.25, 1e-12);
}

TEST(HillNumber, ShannonBranchMatchesEntropyExponential) {
  const std::vector<double> v{0.6, 0.3, 0.1};
  double entropy = 0.0;
  for (double p : v) entropy -= p * std::log(p);
  EXPECT_NEAR(dsn::hill_number(ProportionVector(v), QParam(1)), std::exp(entropy), 1e-12);
}

TEST(Dsn, IdentitySimilarityCompleteNetworkIsHill) {
  const Population pop = Population::create(ProportionVector({0.5, 0.5}),
                                            SquareMatrix::identity(2), SquareMatrix::ones(2));
  EXPECT_NEAR(dsn::dsn(pop, QParam(2)), 2.0, 1e-12);
}

TEST(Dsn, FullySimilarFullyConnectedPopulationHasDiversityOne) {
  std::mt19937_64 rng(7);
  const Population pop =
      Population::create(ProportionVector(dsn::testing::random_simplex(rng, 5)),
                         SquareMatrix::ones(5), SquareMatrix::ones(5));
  for (const QParam& q : dsn::testing::full_q_grid())
    EXPECT_NEAR(dsn::dsn(pop, q), 1.0, 1e-12);
}

TEST(Dsn, SelfLoopOnlyNetworkHandEvaluation) {
  // L - Zbar o I leaves off-diagonal terms untouched; inner = (0.5, 0.5).
  const Population pop = Population::create(ProportionVector({0.5, 0.5}), SquareMatrix(2),
                                            SquareMatrix::identity(2));
  EXPECT_NEAR(dsn::dsn(pop, QParam(2)), 2.0, 1e-12);
}

TEST(Dsn, SquaredDifferenceDissimilarityHandEvaluation) {
  // x = (0, 1), Zbar_ij = (x_i - x_j)^2, E = L: the effective abundance is
  // (0.5, 0.5), so D_2 = 2. Cross-checked with (1 - 2*variance)^{-1}.
  SquareMatrix z(2);
  z(0, 0) = z(1, 1) = 1.0;  // Zbar diagonal 0
  z(0, 1) = z(1, 0) = 0.0;  // Zbar off-diagonal (0-1)^2 = 1
  const Population pop =
      Population::create(ProportionVector({0.5, 0.5}), z, SquareMatrix::ones(2));
  const double direct = dsn::dsn(pop, QParam(2));
  EXPECT_NEAR(direct, 2.0, 1e-12);
  const std::vector<double> x{0.0, 1.0};
  EXPECT_NEAR(direct, 1.0 / (1.0 - 2.0 * dsn::attribute_variance(x)), 1e-12);
}

TEST(Dsn, ZeroProportionTermsContributeNothing) {
  const Population trimmed = Population::create(
      ProportionVector({0.7, 0.3}), SquareMatrix::identity(2), SquareMatrix::ones(2));
  const Population padded = Population::create(ProportionVector({0.7, 0.3, 0.0}),
                                               SquareMatrix::identity(3), SquareMatrix::ones(3));
  for (double q : {0.5, 2.0, 10.0})
    EXPECT_NEAR(dsn::dsn(padded, QParam(q)), dsn::dsn(trimmed, QParam(q)), 1e-12);
}

TEST(Dsn, DegenerateInnerIsReportedNotInfinite) {
  // Category 0 carries all mass, is fully dissimilar to itself and has a
  // full self-loop, so its effective abundance is zero.
  SquareMatrix z(2);
  z(0, 1) = z(1, 0) = 0.0;
  z(1, 1) = 1.0;
  SquareMatrix e = SquareMatrix::ones(2);
  const Population pop = Population::create(ProportionVector({1.0, 0.0}), z, e);
  EXPECT_THROW(dsn::dsn(pop, QParam(0.5)), dsn::DegenerateInner);
  EXPECT_THROW(dsn::dsn(pop, QParam(1)), dsn::DegenerateInner);
}

TEST(Leinster, ReducesToHillForIdentitySimilarity) {
  EXPECT_NEAR(dsn::leinster_diversity(ProportionVector({0.5, 0.5}), SquareMatrix::identity(2),
                                      QParam(2)),
              2.0, 1e-12);
}

TEST(Leinster, AllOnesSimilarityGivesOne) {
  std::mt19937_64 rng(11);
  const ProportionVector p(dsn::testing::random_simplex(rng, 4));
  EXPECT_NEAR(dsn::leinster_diversity(p, SquareMatrix::ones(4), QParam(1)), 1.0, 1e-12);
}

TEST(Leinster, HandEvaluatedPair) {
  SquareMatrix z = SquareMatrix::identity(2);
  z(0, 1) = z(1, 0) = 0.5;
  EXPECT_NEAR(dsn::leinster_diversity(ProportionVector({0.5, 0.5}), z, QParam(2)),
              4.0 / 3.0, 1e-12);
}

TEST(NetworkDensity, HandValues) {
  EXPECT_DOUBLE_EQ(dsn::network_density(SquareMatrix::ones(3)), 1.0);
  EXPECT_DOUBLE_EQ(dsn::network_density(SquareMatrix(4)), 0.0);
  EXPECT_DOUBLE_EQ(dsn::network_density(SquareMatrix::identity(2)), 0.5);
}

TEST(NetworkPowerSeries, SingleTermIsIdentityOperation) {
  std::mt19937_64 rng(3);
  const SquareMatrix e = dsn::testing::random_unit_matrix(rng, 4);
  EXPECT_EQ(dsn::network_power_series(e, 1, 0.5, false), e);
}

TEST(NetworkPowerSeries, PowersOfIdentity) {
  const SquareMatrix out = dsn::network_power_series(SquareMatrix::identity(3), 3, 0.5, false);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(out(i, j), i == j ? 1.75 : 0.0, 1e-12);
}

TEST(NetworkPowerSeries, ClampTruncatesToUnitInterval) {
  const SquareMatrix out = dsn::network_power_series(SquareMatrix::identity(3), 3, 0.5, true);
  EXPECT_EQ(out, SquareMatrix::identity(3));
}

TEST(AttributeVariance, HandValues) {
  EXPECT_NEAR(dsn::attribute_variance(std::vector<double>{0.4, 0.4, 0.4}), 0.0, 1e-15);
  EXPECT_NEAR(dsn::attribute_variance(std::vector<double>{0.0, 1.0}), 0.25, 1e-15);
  EXPECT_NEAR(dsn::attribute_variance(std::vector<double>{0.0, 0.5, 1.0}), 1.0 / 6.0, 1e-15);
}

TEST(PairwiseSquareIdentity, HandValues) {
  const auto [left, right] = dsn::pairwise_square_identity(std::vector<double>{0.0, 1.0});
  EXPECT_DOUBLE_EQ(left, 2.0);
  EXPECT_DOUBLE_EQ(right, 2.0);
  const auto [zl, zr] = dsn::pairwise_square_identity(std::vector<double>{0.3, 0.3});
  EXPECT_DOUBLE_EQ(zl, 0.0);
  EXPECT_DOUBLE_EQ(zr, 0.0);
}

TEST(PairwiseSquareIdentity, BothRoutesAgreeOnRandomVectors) {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(50);
  for (double& v : x) v = unif(rng);
  const auto [left, right] = dsn::pairwise_square_identity(x);
  EXPECT_NEAR(left, right, dsn::kComparisonSlack);
}

// --- propositions as properties -------------------------------------------

TEST(DsnProperties, MonotonicallyNonIncreasingInQ) {
  std::mt19937_64 rng(101);
  const auto grid = dsn::testing::full_q_grid();
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const Population pop = dsn::testing::random_population(rng, n);
    std::vector<double> values;
    for (const QParam& q : grid) values.push_back(dsn::dsn(pop, q));
    for (std::size_t a = 0; a + 1 < values.size(); ++a)
      for (std::size_t b = a + 1; b < values.size(); ++b)
        EXPECT_GE(values[a], values[b] - dsn::kComparisonSlack)
            << "q indices " << a << " vs " << b;
  }
}

TEST(DsnProperties, MoreSimilarityNeverIncreasesDiversity) {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto grid = dsn::testing::full_q_grid();
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 5);
    const Population pop = dsn::testing::random_population(rng, n);
    SquareMatrix smaller(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) smaller(i, j) = pop.similarity(i, j) * unif(rng);
    const Population dominated =
        Population::create(pop.proportions, smaller, pop.adjacency);
    for (const QParam& q : grid)
      EXPECT_LE(dsn::dsn(pop, q), dsn::dsn(dominated, q) + dsn::kComparisonSlack);
  }
}

TEST(DsnProperties, MoreNetworkNeverDecreasesDiversity) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto grid = dsn::testing::full_q_grid();
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 5);
    const Population pop = dsn::testing::random_population(rng, n);
    SquareMatrix smaller(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) smaller(i, j) = pop.adjacency(i, j) * unif(rng);
    const Population weaker = Population::create(pop.proportions, pop.similarity, smaller);
    for (const QParam& q : grid)
      EXPECT_LE(dsn::dsn(weaker, q), dsn::dsn(pop, q) + dsn::kComparisonSlack);
  }
}

TEST(DsnProperties, HillReduction) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const ProportionVector p(dsn::testing::random_simplex(rng, n));
    const Population pop =
        Population::create(p, SquareMatrix::identity(n), SquareMatrix::ones(n));
    for (double q : {0.0, 0.5, 1.0, 2.0, 10.0})
      EXPECT_NEAR(dsn::dsn(pop, QParam(q)), dsn::hill_number(p, QParam(q)),
                  dsn::kOracleTolerance);
    EXPECT_NEAR(dsn::dsn(pop, QParam::infinity()),
                dsn::hill_number(p, QParam::infinity()), dsn::kOracleTolerance);
  }
}

TEST(DsnProperties, LeinsterReduction) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const ProportionVector p(dsn::testing::random_simplex(rng, n));
    const SquareMatrix z = dsn::testing::random_unit_matrix(rng, n);
    const Population pop = Population::create(p, z, SquareMatrix::ones(n));
    for (double q : {0.0, 0.5, 1.0, 2.0, 10.0})
      EXPECT_NEAR(dsn::dsn(pop, QParam(q)), dsn::leinster_diversity(p, z, QParam(q)),
                  dsn::kDualRouteTolerance);
    EXPECT_NEAR(dsn::dsn(pop, QParam::infinity()),
                dsn::leinster_diversity(p, z, QParam::infinity()), dsn::kDualRouteTolerance);
  }
}

TEST(DsnProperties, DensityReduction) {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    SquareMatrix e = dsn::testing::random_binary_matrix(rng, n);
    e(0, 0) = 0.0;  // keep density < 1
    const Population pop =
        Population::create(ProportionVector::uniform(n), SquareMatrix(n), e);
    EXPECT_NEAR(dsn::dsn(pop, QParam(2)), 1.0 / (1.0 - dsn::network_density(e)),
                dsn::kOracleTolerance);
  }
}

TEST(DsnProperties, VarianceReduction) {
  // With Zbar_ij = (x_i - x_j)^2, uniform p, q = 2 and a complete network,
  // dsn equals (1 - 2 * variance)^{-1}; the pairwise-sum identity carries
  // the factor two.
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 11);
    std::vector<double> x(n);
    for (double& v : x) v = unif(rng);
    SquareMatrix z(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        z(i, j) = 1.0 - (x[i] - x[j]) * (x[i] - x[j]);
    const Population pop =
        Population::create(ProportionVector::uniform(n), z, SquareMatrix::ones(n));
    EXPECT_NEAR(dsn::dsn(pop, QParam(2)),
                1.0 / (1.0 - 2.0 * dsn::attribute_variance(x)), dsn::kOracleTolerance);
  }
}

TEST(DsnProperties, ContinuousAcrossTheQOneBranch) {
  std::mt19937_64 rng(108);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const Population pop = dsn::testing::random_population(rng, n);
    const double at_one = dsn::dsn(pop, QParam(1));
    EXPECT_NEAR(dsn::dsn(pop, QParam(1.0 - 1e-6)), at_one, 1e-4);
    EXPECT_NEAR(dsn::dsn(pop, QParam(1.0 + 1e-6)), at_one, 1e-4);
  }
}

TEST(DsnProperties, RangeBetweenOneAndN) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const Population pop =
        Population::create(ProportionVector(dsn::testing::random_simplex(rng, n)),
                           SquareMatrix::identity(n), SquareMatrix::ones(n));
    for (const QParam& q : dsn::testing::full_q_grid()) {
      const double d = dsn::dsn(pop, q);
      EXPECT_GE(d, 1.0 - dsn::kComparisonSlack);
      EXPECT_LE(d, static_cast<double>(n) + dsn::kComparisonSlack);
    }
  }
}

TEST(Population, RejectsOutOfRangeInputsInsteadOfClamping) {
  SquareMatrix bad = SquareMatrix::ones(2);
  bad(0, 1) = 1.5;
  EXPECT_THROW(Population::create(ProportionVector({0.5, 0.5}), SquareMatrix::identity(2), bad),
               dsn::ValidationError);
  EXPECT_THROW(Population::create(ProportionVector({0.5, 0.5}), bad, SquareMatrix::ones(2)),
               dsn::ValidationError);
  EXPECT_THROW(ProportionVector({0.5, 0.6}), dsn::ValidationError);
  EXPECT_THROW(ProportionVector({-0.1, 1.1}), dsn::ValidationError);
}

}  // namespace
