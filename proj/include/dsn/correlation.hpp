#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dsn/errors.hpp"

namespace dsn {

namespace detail {

inline void require_paired_samples(std::span<const double> xs, std::span<const double> ys,
                                   std::size_t min_len, const char* who) {
  if (xs.size() != ys.size())
    throw DimensionMismatch(std::string(who) + ": lengths differ");
  if (xs.size() < min_len)
    throw SampleTooSmall(std::string(who) + ": need at least " + std::to_string(min_len) +
                         " samples, got " + std::to_string(xs.size()));
}

inline bool is_constant(std::span<const double> v) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  return *mn == *mx;
}

}  // namespace detail

// Product-moment correlation. Inputs of equal length >= 3; a constant input
// has no defined correlation and is reported as DegenerateVariance.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  detail::require_paired_samples(xs, ys, 3, "pearson");
  if (detail::is_constant(xs) || detail::is_constant(ys))
    throw DegenerateVariance("pearson: constant input vector");
  const std::size_t m = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

// 1-based fractional ranks; ties receive the average of their rank range.
inline std::vector<double> fractional_ranks(std::span<const double> v) {
  const std::size_t m = v.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return a < b;
  });
  std::vector<double> ranks(m);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j < m && v[idx[j]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = avg;
    i = j;
  }
  return ranks;
}

// Rank correlation: pearson applied to fractional ranks.
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
  detail::require_paired_samples(xs, ys, 3, "spearman");
  const std::vector<double> rx = fractional_ranks(xs);
  const std::vector<double> ry = fractional_ranks(ys);
  if (detail::is_constant(rx) || detail::is_constant(ry))
    throw DegenerateVariance("spearman: all ranks tie");
  return pearson(rx, ry);
}

namespace detail {

// Equipartition values into at most `bins` contiguous groups of near-equal
// size, keeping equal values in the same group. Returns the group index per
// sample. Depends on the order statistics only, so strictly monotone
// transforms leave the assignment unchanged.
inline std::vector<int> equipartition(std::span<const double> v, int bins) {
  const std::size_t m = v.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return a < b;
  });
  std::vector<int> assign(m, 0);
  double target = static_cast<double>(m) / bins;
  int group = 0;
  double in_group = 0.0;
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j < m && v[idx[j]] == v[idx[i]]) ++j;
    const double run = static_cast<double>(j - i);
    if (in_group > 0.0 && group < bins - 1 &&
        std::abs(in_group + run - target) >= std::abs(in_group - target)) {
      ++group;
      in_group = 0.0;
      target = static_cast<double>(m - i) / (bins - group);
    }
    for (std::size_t k = i; k < j; ++k) assign[idx[k]] = group;
    in_group += run;
    i = j;
  }
  return assign;
}

inline double xlogx(double c) { return c > 0.0 ? c * std::log(c) : 0.0; }

// Maximal mutual information over partitions of the free axis into at most
// `parts` contiguous columns, with the other axis already fixed to `rows`
// groups. `order` lists sample indices sorted along the free axis;
// `row_of` holds the fixed-axis group per sample. Exact via dynamic
// programming over all cut placements: minimizes
//   sum over columns of (C log C - sum_r c_r log c_r),
// which is m * H(rows | columns).
inline double max_mutual_information(const std::vector<std::size_t>& order,
                                     const std::vector<int>& row_of, int rows,
                                     int parts) {
  const std::size_t m = order.size();
  // cum[i][r]: count of row r among the first i points in axis order.
  std::vector<std::vector<int>> cum(m + 1, std::vector<int>(rows, 0));
  for (std::size_t i = 0; i < m; ++i) {
    cum[i + 1] = cum[i];
    cum[i + 1][row_of[order[i]]] += 1;
  }
  auto segment_cost = [&](std::size_t a, std::size_t b) {
    const double total = static_cast<double>(b - a);
    double acc = xlogx(total);
    for (int r = 0; r < rows; ++r)
      acc -= xlogx(static_cast<double>(cum[b][r] - cum[a][r]));
    return acc;
  };
  const int max_parts = static_cast<int>(std::min<std::size_t>(parts, m));
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, kInf), curr(m + 1, kInf);
  for (std::size_t i = 1; i <= m; ++i) prev[i] = segment_cost(0, i);
  double best_cost = prev[m];
  for (int t = 2; t <= max_parts; ++t) {
    std::fill(curr.begin(), curr.end(), kInf);
    for (std::size_t i = static_cast<std::size_t>(t); i <= m; ++i) {
      double best = kInf;
      for (std::size_t s = static_cast<std::size_t>(t) - 1; s < i; ++s) {
        const double c = prev[s] + segment_cost(s, i);
        if (c < best) best = c;
      }
      curr[i] = best;
    }
    best_cost = std::min(best_cost, curr[m]);
    std::swap(prev, curr);
  }
  // H(rows) - H(rows | columns), both scaled from count space.
  double h_rows = xlogx(static_cast<double>(m));
  for (int r = 0; r < rows; ++r) h_rows -= xlogx(static_cast<double>(cum[m][r]));
  return (h_rows - best_cost) / static_cast<double>(m);
}

inline std::vector<std::size_t> axis_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return a < b;
  });
  return idx;
}

}  // namespace detail

// Maximal information coefficient: the largest normalized mutual information
// over k x l grids with k*l <= m^0.6 (k, l >= 2). One axis is equipartitioned
// and the other optimized exactly by dynamic programming, in both
// orientations. The computation uses order statistics only, so the score is
// invariant under strictly monotone per-axis transforms. Sample size is
// capped at 200 to bound the search.
inline double mic(std::span<const double> xs, std::span<const double> ys) {
  detail::require_paired_samples(xs, ys, 8, "mic");
  const std::size_t m = xs.size();
  if (m > 200)
    throw ValidationError("mic: exhaustive grid search supports at most 200 samples");
  const double budget = std::max(std::pow(static_cast<double>(m), 0.6), 4.0);
  const auto x_order = detail::axis_order(xs);
  const auto y_order = detail::axis_order(ys);
  double best = 0.0;
  const int max_side = static_cast<int>(budget / 2.0);
  for (int l = 2; l <= max_side; ++l) {
    const std::vector<int> y_rows = detail::equipartition(ys, l);
    const std::vector<int> x_cols = detail::equipartition(xs, l);
    const int max_k = static_cast<int>(budget / l);
    for (int k = 2; k <= max_k; ++k) {
      const double norm = std::log(static_cast<double>(std::min(k, l)));
      const double i_x = detail::max_mutual_information(x_order, y_rows, l, k);
      const double i_y = detail::max_mutual_information(y_order, x_cols, l, k);
      best = std::max(best, std::max(i_x, i_y) / norm);
    }
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace dsn
