#include "dsn/similarity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dsn/tolerances.hpp"

using dsn::AttributeMatrix;
using dsn::AttributeSet;
using dsn::SetCoefficient;
using dsn::SimilarityKernel;
using dsn::SquareMatrix;
using dsn::WeightVector;

namespace {

TEST(WeightedEuclidean, HandValues) {
  const WeightVector w({1.0, 0.0});
  const std::vector<double> a{1.0, 0.0}, b{0.0, 0.0};
  EXPECT_DOUBLE_EQ(dsn::weighted_euclidean(a, a, w), 0.0);
  EXPECT_DOUBLE_EQ(dsn::weighted_euclidean(a, b, w), 1.0);
  const WeightVector half({0.5, 0.5});
  const std::vector<double> ones{1.0, 1.0}, zeros{0.0, 0.0};
  EXPECT_DOUBLE_EQ(dsn::weighted_euclidean(ones, zeros, half), 1.0);
}

TEST(WeightedEuclidean, RejectsDimensionMismatch) {
  const std::vector<double> a{1.0, 0.0}, b{0.0};
  EXPECT_THROW(dsn::weighted_euclidean(a, b, WeightVector({1.0})), dsn::DimensionMismatch);
}

TEST(WeightedEuclidean, SymmetricAndTriangleInequality) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t a = 1 + rng() % 5;
    std::vector<double> raw(a);
    double sum = 0.0;
    for (double& v : raw) sum += v = unif(rng) + 1e-3;
    for (double& v : raw) v /= sum;
    const WeightVector w(raw);
    std::vector<double> x(a), y(a), z(a);
    for (std::size_t m = 0; m < a; ++m) {
      x[m] = unif(rng);
      y[m] = unif(rng);
      z[m] = unif(rng);
    }
    const double dxy = dsn::weighted_euclidean(x, y, w);
    const double dyx = dsn::weighted_euclidean(y, x, w);
    const double dxz = dsn::weighted_euclidean(x, z, w);
    const double dzy = dsn::weighted_euclidean(z, y, w);
    EXPECT_DOUBLE_EQ(dxy, dyx);
    EXPECT_LE(dxy, dxz + dzy + dsn::kComparisonSlack);
  }
}

TEST(WeightedEuclidean, UniformWeightsScaleTheUnweightedDistance) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t a = 4;
  const WeightVector w = WeightVector::uniform(a);
  std::vector<double> x(a), y(a);
  for (std::size_t m = 0; m < a; ++m) {
    x[m] = unif(rng);
    y[m] = unif(rng);
  }
  double unweighted_sq = 0.0;
  for (std::size_t m = 0; m < a; ++m) unweighted_sq += (x[m] - y[m]) * (x[m] - y[m]);
  const double d = dsn::weighted_euclidean(x, y, w);
  EXPECT_NEAR(d * d, unweighted_sq / static_cast<double>(a), 1e-12);
}

TEST(Kernels, HandValues) {
  EXPECT_DOUBLE_EQ(dsn::similarity_exp(0.0), 1.0);
  EXPECT_NEAR(dsn::similarity_exp(1.0), 0.367879441171442, 1e-12);
  EXPECT_DOUBLE_EQ(dsn::similarity_reciprocal(0.0), 1.0);
  EXPECT_DOUBLE_EQ(dsn::similarity_reciprocal(1.0), 0.5);
  EXPECT_DOUBLE_EQ(dsn::similarity_reciprocal(3.0), 0.25);
}

TEST(Kernels, StrictlyDecreasingInDistance) {
  double prev_exp = 2.0, prev_rec = 2.0;
  for (double d = 0.0; d <= 40.0; d += 0.5) {
    const double e = dsn::similarity_exp(d);
    const double r = dsn::similarity_reciprocal(d);
    EXPECT_LT(e, prev_exp);
    EXPECT_LT(r, prev_rec);
    EXPECT_GT(e, 0.0);
    EXPECT_GT(r, 0.0);
    prev_exp = e;
    prev_rec = r;
  }
}

TEST(BuildSimilarityMatrix, IdenticalRowsGiveAllOnes) {
  const AttributeMatrix x = AttributeMatrix::from_rows({{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}});
  for (SimilarityKernel kernel :
       {SimilarityKernel::Exp, SimilarityKernel::Reciprocal, SimilarityKernel::Raw}) {
    const SquareMatrix z = dsn::build_similarity_matrix(x, WeightVector({0.5, 0.5}), kernel);
    EXPECT_EQ(z, SquareMatrix::ones(3));
  }
}

TEST(BuildSimilarityMatrix, BenchmarkAttributeEncoding) {
  const AttributeMatrix x = AttributeMatrix::from_rows({{1, 0}, {1, 1}, {0, 0}});
  const SquareMatrix z =
      dsn::build_similarity_matrix(x, WeightVector({0.5, 0.5}), SimilarityKernel::Exp);
  const double e_half = std::exp(-std::sqrt(0.5));
  EXPECT_NEAR(z(0, 1), e_half, 1e-12);
  EXPECT_NEAR(z(0, 2), e_half, 1e-12);
  EXPECT_NEAR(z(1, 2), std::exp(-1.0), 1e-12);
}

TEST(BuildSimilarityMatrix, WeightConcentratedOnConstantColumn) {
  const AttributeMatrix x = AttributeMatrix::from_rows({{0.5, 0.1}, {0.5, 0.9}, {0.5, 0.4}});
  const SquareMatrix z =
      dsn::build_similarity_matrix(x, WeightVector({1.0, 0.0}), SimilarityKernel::Exp);
  EXPECT_EQ(z, SquareMatrix::ones(3));
}

TEST(BuildSimilarityMatrix, SymmetricWithUnitDiagonal) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (SimilarityKernel kernel :
       {SimilarityKernel::Exp, SimilarityKernel::Reciprocal, SimilarityKernel::Raw}) {
    const std::size_t n = 5, a = 3;
    std::vector<std::vector<double>> rows(n, std::vector<double>(a));
    for (auto& row : rows)
      for (double& v : row) v = unif(rng);
    std::vector<double> raw(a);
    double sum = 0.0;
    for (double& v : raw) sum += v = unif(rng) + 0.01;
    for (double& v : raw) v /= sum;
    const SquareMatrix z = dsn::build_similarity_matrix(AttributeMatrix::from_rows(rows),
                                                        WeightVector(raw), kernel);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_DOUBLE_EQ(z(i, i), 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_DOUBLE_EQ(z(i, j), z(j, i));
        EXPECT_GT(z(i, j), 0.0);
        EXPECT_LE(z(i, j), 1.0);
      }
    }
  }
}

TEST(BuildSimilarityMatrix, RejectsWeightDimensionMismatch) {
  const AttributeMatrix x = AttributeMatrix::from_rows({{1, 0}, {0, 1}});
  EXPECT_THROW(dsn::build_similarity_matrix(x, WeightVector({1.0}), SimilarityKernel::Exp),
               dsn::DimensionMismatch);
}

TEST(RawKernel, RejectsDistancesAboveOne) {
  EXPECT_THROW(dsn::apply_kernel(SimilarityKernel::Raw, 1.5), dsn::ValidationError);
  EXPECT_DOUBLE_EQ(dsn::apply_kernel(SimilarityKernel::Raw, 0.25), 0.75);
}

TEST(SetSimilarity, HandValues) {
  const AttributeSet ab{"a", "b"}, bc{"b", "c"};
  EXPECT_DOUBLE_EQ(dsn::set_similarity(ab, ab, SetCoefficient::Jaccard), 1.0);
  EXPECT_DOUBLE_EQ(dsn::set_similarity(ab, ab, SetCoefficient::Dice), 1.0);
  EXPECT_DOUBLE_EQ(dsn::set_similarity(ab, ab, SetCoefficient::Simpson), 1.0);
  EXPECT_NEAR(dsn::set_similarity(ab, bc, SetCoefficient::Jaccard), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(dsn::set_similarity(ab, bc, SetCoefficient::Dice), 0.5);
}

TEST(SetSimilarity, EmptyInputErrors) {
  const AttributeSet empty, ab{"a", "b"};
  EXPECT_THROW(dsn::set_similarity(empty, empty, SetCoefficient::Jaccard), dsn::EmptyInput);
  EXPECT_THROW(dsn::set_similarity(empty, empty, SetCoefficient::Dice), dsn::EmptyInput);
  EXPECT_THROW(dsn::set_similarity(empty, ab, SetCoefficient::Simpson), dsn::EmptyInput);
  // One empty set is fine for jaccard and dice: zero overlap.
  EXPECT_DOUBLE_EQ(dsn::set_similarity(empty, ab, SetCoefficient::Jaccard), 0.0);
}

TEST(SetSimilarity, JaccardLeDiceLeSimpson) {
  std::mt19937_64 rng(45);
  const std::vector<std::string> tokens{"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 100; ++trial) {
    AttributeSet a, b;
    for (const auto& t : tokens) {
      if (rng() % 2) a.insert(t);
      if (rng() % 2) b.insert(t);
    }
    if (a.empty()) a.insert("x");
    if (b.empty()) b.insert("y");
    const double j = dsn::set_similarity(a, b, SetCoefficient::Jaccard);
    const double d = dsn::set_similarity(a, b, SetCoefficient::Dice);
    const double s = dsn::set_similarity(a, b, SetCoefficient::Simpson);
    EXPECT_LE(j, d + 1e-15);
    EXPECT_LE(d, s + 1e-15);
  }
}

TEST(AttributeMatrix, RejectsOutOfRangeEntries) {
  EXPECT_THROW(AttributeMatrix::from_rows({{1.2, 0.0}}), dsn::ValidationError);
  EXPECT_THROW(AttributeMatrix::from_rows({{0.5}, {0.4, 0.3}}), dsn::DimensionMismatch);
}

TEST(WeightVector, EnforcesSimplexInvariants) {
  EXPECT_THROW(WeightVector({0.7, 0.7}), dsn::ValidationError);
  EXPECT_THROW(WeightVector({1.2, -0.2}), dsn::ValidationError);
  EXPECT_NO_THROW(WeightVector({1.0, 0.0}));  // boundary weights are legal
}

}  // namespace
