#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsn/errors.hpp"
#include "dsn/matrix.hpp"
#include "dsn/tolerances.hpp"

namespace dsn {

// Per-category attribute rows: n rows of a real attributes, each in [0,1].
class AttributeMatrix {
 public:
  AttributeMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0)
      throw ValidationError("attributes: need at least one row and one column");
    if (entries_.size() != rows_ * cols_)
      throw DimensionMismatch("attributes: entry count does not match shape");
    for (double v : entries_)
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("attributes: entry " + std::to_string(v) + " outside [0,1]");
  }

  static AttributeMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ValidationError("attributes: no rows");
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw DimensionMismatch("attributes: row " + std::to_string(i) +
                                " has inconsistent length");
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return AttributeMatrix(rows.size(), cols, std::move(flat));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// Attribute weights on the probability simplex. Zero entries are legal; the
// weight optimizer may land on the boundary.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("weights: need at least one entry");
    double sum = 0.0;
    for (double w : values_) {
      if (!(w >= 0.0 && w <= 1.0))
        throw ValidationError("weights: entry " + std::to_string(w) + " outside [0,1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexSumTolerance)
      throw ValidationError("weights sum to " + std::to_string(sum) +
                            ", expected 1 within tolerance");
  }

  static WeightVector uniform(std::size_t a) {
    return WeightVector(std::vector<double>(a, 1.0 / static_cast<double>(a)));
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// sqrt((xi - xj)^T W (xi - xj)) with W = diag(w). Symmetric; zero exactly
// when the rows agree on every coordinate with positive weight.
inline double weighted_euclidean(std::span<const double> xi, std::span<const double> xj,
                                 const WeightVector& w) {
  if (xi.size() != xj.size() || xi.size() != w.size())
    throw DimensionMismatch("weighted_euclidean: dimensions differ");
  double acc = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    const double d = xi[m] - xj[m];
    acc += w[m] * d * d;
  }
  return std::sqrt(acc);
}

inline double similarity_exp(double d) { return std::exp(-d); }

inline double similarity_reciprocal(double d) { return 1.0 / (1.0 + d); }

// How a distance becomes a similarity entry. Raw uses the distance itself as
// the dissimilarity (Z = 1 - d) and requires d in [0,1].
enum class SimilarityKernel { Exp, Reciprocal, Raw };

inline double apply_kernel(SimilarityKernel kernel, double d) {
  switch (kernel) {
    case SimilarityKernel::Exp:
      return similarity_exp(d);
    case SimilarityKernel::Reciprocal:
      return similarity_reciprocal(d);
    case SimilarityKernel::Raw:
      if (!(d >= 0.0 && d <= 1.0 + 1e-12))
        throw ValidationError("raw kernel requires distances in [0,1], got " +
                              std::to_string(d));
      return 1.0 - std::min(d, 1.0);
  }
  throw ValidationError("unknown similarity kernel");
}

// Pairwise similarity matrix from attribute rows under a weighted Euclidean
// distance. Symmetric with unit diagonal by construction.
inline SquareMatrix build_similarity_matrix(const AttributeMatrix& attributes,
                                            const WeightVector& weights,
                                            SimilarityKernel kernel) {
  if (weights.size() != attributes.cols())
    throw DimensionMismatch("build_similarity_matrix: " + std::to_string(weights.size()) +
                            " weights for " + std::to_string(attributes.cols()) +
                            " attribute columns");
  const std::size_t n = attributes.rows();
  SquareMatrix z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = apply_kernel(kernel, weighted_euclidean(attributes.row(i),
                                                               attributes.row(j), weights));
      z(i, j) = s;
      z(j, i) = s;
    }
  }
  return z;
}

using AttributeSet = std::set<std::string>;
using AttributeSetFamily = std::vector<AttributeSet>;

enum class SetCoefficient { Jaccard, Dice, Simpson };

// Overlap similarity of two token sets. Token equality is exact.
inline double set_similarity(const AttributeSet& a, const AttributeSet& b,
                             SetCoefficient coeff) {
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  const std::size_t union_size = a.size() + b.size() - inter;
  switch (coeff) {
    case SetCoefficient::Jaccard:
      if (union_size == 0) throw EmptyInput("jaccard: both sets empty");
      return static_cast<double>(inter) / static_cast<double>(union_size);
    case SetCoefficient::Dice:
      if (a.empty() && b.empty()) throw EmptyInput("dice: both sets empty");
      return 2.0 * static_cast<double>(inter) /
             static_cast<double>(a.size() + b.size());
    case SetCoefficient::Simpson:
      if (a.empty() || b.empty()) throw EmptyInput("simpson: empty set");
      return static_cast<double>(inter) /
             static_cast<double>(std::min(a.size(), b.size()));
  }
  throw ValidationError("unknown set coefficient");
}

inline SquareMatrix build_set_similarity_matrix(const AttributeSetFamily& sets,
                                                SetCoefficient coeff) {
  if (sets.empty()) throw ValidationError("attribute sets: no categories");
  const std::size_t n = sets.size();
  SquareMatrix z(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double s = set_similarity(sets[i], sets[j], coeff);
      z(i, j) = s;
      z(j, i) = s;
    }
  return z;
}

}  // namespace dsn
