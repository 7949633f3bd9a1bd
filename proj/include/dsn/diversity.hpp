#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsn/errors.hpp"
#include "dsn/matrix.hpp"
#include "dsn/types.hpp"

namespace dsn {

namespace detail {

// Order-q power mean machinery shared by the diversity indices. Given
// proportions p and per-category base values v, evaluates
//   (sum_i p_i * v_i^(q-1))^(1/(1-q))      finite q != 1
//   exp(-sum_i p_i * log(v_i))             q = 1 (log space, avoids underflow)
//   (max_i v_i)^(-1)                       q = infinity
// Terms with p_i = 0 contribute nothing at finite q and the q=1 convention
// treats a 0^0-style factor as 1. A zero base paired with a positive
// proportion is a reciprocal of zero for q <= 1 and is reported as
// DegenerateInner rather than returned as infinity.
inline double order_q_diversity(std::span<const double> p, std::span<const double> v,
                                QParam q) {
  const std::size_t n = p.size();
  if (q.is_infinite()) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, v[i]);
    if (m <= 0.0)
      throw DegenerateInner("diversity at q=infinity: maximal abundance is zero");
    return 1.0 / m;
  }
  const double qv = q.value();
  if (q.is_one()) {
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] == 0.0) continue;
      if (v[i] <= 0.0)
        throw DegenerateInner("diversity at q=1: zero abundance for category " +
                              std::to_string(i) + " with positive proportion");
      log_sum += p[i] * std::log(v[i]);
    }
    return std::exp(-log_sum);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == 0.0) continue;
    if (v[i] == 0.0) {
      if (qv < 1.0)
        throw DegenerateInner("diversity at q=" + std::to_string(qv) +
                              ": zero abundance for category " + std::to_string(i) +
                              " with positive proportion");
      continue;  // 0^(q-1) = 0 for q > 1
    }
    sum += p[i] * std::pow(v[i], qv - 1.0);
  }
  if (sum <= 0.0)
    throw DegenerateInner("diversity at q=" + std::to_string(qv) +
                          ": power sum vanished");
  return std::pow(sum, 1.0 / (1.0 - qv));
}

}  // namespace detail

// True diversity of a bare proportion vector. Richness at q=0, exponential
// Shannon entropy at q=1, inverse Simpson at q=2, inverse Berger-Parker at
// q=infinity. Result lies in [1, n].
inline double hill_number(const ProportionVector& p, QParam q) {
  return detail::order_q_diversity(p.values(), p.values(), q);
}

// Inclusion-weighted abundance vector ((L - Zbar o E) p): what proportion of
// the population each category experiences as effectively similar or
// connected, with Zbar = L - Z the dissimilarity complement.
inline std::vector<double> effective_abundance(const Population& pop) {
  const std::size_t n = pop.size();
  const auto& p = pop.proportions.values();
  std::vector<double> inner(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double zbar = 1.0 - pop.similarity(i, j);
      acc += (1.0 - zbar * pop.adjacency(i, j)) * p[j];
    }
    inner[i] = acc;
  }
  return inner;
}

// The diversity/inclusion index combining proportions, similarity and the
// directed network. Monotonically non-increasing in q; decreasing in
// similarity and increasing in adjacency (entrywise).
inline double dsn(const Population& pop, QParam q) {
  const std::vector<double> inner = effective_abundance(pop);
  return detail::order_q_diversity(pop.proportions.values(), inner, q);
}

// Similarity-sensitive diversity without network structure: base values are
// (Z p)_i. Coincides with dsn when every adjacency entry is 1.
inline double leinster_diversity(const ProportionVector& p, const SquareMatrix& similarity,
                                 QParam q) {
  if (similarity.order() != p.size())
    throw DimensionMismatch("leinster_diversity: similarity order " +
                            std::to_string(similarity.order()) + " != n = " +
                            std::to_string(p.size()));
  require_unit_interval(similarity, "similarity");
  const std::vector<double> inner = matvec(similarity, p.values());
  return detail::order_q_diversity(p.values(), inner, q);
}

// Directed-graph density including self-loops: sum of entries over n^2.
inline double network_density(const SquareMatrix& adjacency) {
  require_unit_interval(adjacency, "adjacency");
  double sum = 0.0;
  for (double e : adjacency.entries()) sum += e;
  return sum / (static_cast<double>(adjacency.order()) * static_cast<double>(adjacency.order()));
}

// Discounted geometric series of adjacency powers,
//   E + rho E^2 + rho^2 E^3 + ... + rho^(n_terms-1) E^n_terms,
// modeling multi-hop influence with discount rate rho. With clamp_to_unit the
// result is truncated entrywise to [0,1] so it remains usable as an adjacency
// input to dsn; without, the raw accumulation is returned.
inline SquareMatrix network_power_series(const SquareMatrix& adjacency, int n_terms,
                                         double rho, bool clamp_to_unit) {
  require_unit_interval(adjacency, "adjacency");
  if (n_terms < 1) throw ValidationError("network_power_series: n_terms must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw ValidationError("network_power_series: rho must lie in [0,1]");
  SquareMatrix sum = adjacency;
  SquareMatrix term = adjacency;
  for (int k = 2; k <= n_terms; ++k) {
    term = rho * matmul(term, adjacency);
    sum = sum + term;
  }
  if (clamp_to_unit) {
    SquareMatrix clamped(sum.order());
    for (std::size_t i = 0; i < sum.order(); ++i)
      for (std::size_t j = 0; j < sum.order(); ++j)
        clamped(i, j) = std::clamp(sum(i, j), 0.0, 1.0);
    return clamped;
  }
  return sum;
}

// Population variance (1/n) sum (x_i - mean)^2 of one-dimensional attributes.
inline double attribute_variance(std::span<const double> x) {
  if (x.empty()) throw EmptyInput("attribute_variance: empty input");
  for (double v : x)
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError("attribute_variance: entry outside [0,1]");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(x.size());
}

// Two routes to the same quantity, used as a test oracle: the full double
// loop sum_i sum_j (x_i - x_j)^2, and 2n * sum_i (x_i - mean)^2. The two
// sides agree identically in exact arithmetic.
inline std::pair<double, double> pairwise_square_identity(std::span<const double> x) {
  if (x.empty()) throw EmptyInput("pairwise_square_identity: empty input");
  const std::size_t n = x.size();
  double double_loop = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) double_loop += (x[i] - x[j]) * (x[i] - x[j]);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double centered = 0.0;
  for (double v : x) centered += (v - mean) * (v - mean);
  return {double_loop, 2.0 * static_cast<double>(n) * centered};
}

}  // namespace dsn
