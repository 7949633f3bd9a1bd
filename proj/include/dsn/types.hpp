#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dsn/errors.hpp"
#include "dsn/matrix.hpp"
#include "dsn/tolerances.hpp"

namespace dsn {

// Category proportions: entries in [0,1] summing to 1 within kSimplexSumTolerance.
class ProportionVector {
 public:
  explicit ProportionVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("proportions: need at least one category");
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double p = values_[i];
      if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("proportions: entry " + std::to_string(i) + " = " +
                              std::to_string(p) + " outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexSumTolerance)
      throw ValidationError("proportions sum to " + std::to_string(sum) +
                            ", expected 1 within tolerance");
  }

  static ProportionVector uniform(std::size_t n) {
    return ProportionVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Diversity order parameter: a nonnegative real or the infinity marker.
// The q=1 and q=infinity branches trigger only on the exact marker values.
class QParam {
 public:
  QParam(double value) : value_(value) {  // NOLINT: implicit by design
    if (std::isnan(value) || value < 0.0)
      throw ValidationError("q must be a nonnegative real or infinity");
  }

  static QParam infinity() { return QParam(std::numeric_limits<double>::infinity()); }

  double value() const { return value_; }
  bool is_infinite() const { return std::isinf(value_); }
  bool is_one() const { return value_ == 1.0; }

  bool operator==(const QParam& other) const = default;

 private:
  double value_;
};

// One population: proportions, a similarity matrix and a directed adjacency
// matrix of the same order. Adjacency may be weighted and asymmetric; its
// diagonal may be 1. Both matrices are validated to entries in [0,1] so the
// inclusion-weighted abundances stay in [0,1].
struct Population {
  ProportionVector proportions;
  SquareMatrix similarity;
  SquareMatrix adjacency;
  std::string label;

  static Population create(ProportionVector p, SquareMatrix similarity,
                           SquareMatrix adjacency, std::string label = {}) {
    if (similarity.order() != p.size() || adjacency.order() != p.size())
      throw DimensionMismatch("population: proportions (n=" + std::to_string(p.size()) +
                              "), similarity (n=" + std::to_string(similarity.order()) +
                              ") and adjacency (n=" + std::to_string(adjacency.order()) +
                              ") must share one order");
    require_unit_interval(similarity, "similarity");
    require_unit_interval(adjacency, "adjacency");
    return Population{std::move(p), std::move(similarity), std::move(adjacency),
                      std::move(label)};
  }

  std::size_t size() const { return proportions.size(); }
};

}  // namespace dsn
