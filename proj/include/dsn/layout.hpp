#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dsn/errors.hpp"
#include "dsn/matrix.hpp"
#include "dsn/types.hpp"

namespace dsn {

struct LayoutLink {
  std::size_t source = 0;
  std::size_t target = 0;
  double width = 0.0;  // proportional to the adjacency entry
};

// 2-D placement of categories: coordinates centered on the origin, circle
// diameters proportional to proportions, one directed link per positive
// off-diagonal adjacency entry.
struct Layout {
  std::vector<std::array<double, 2>> coords;
  std::vector<double> diameters;
  std::vector<LayoutLink> links;
  std::array<double, 2> eigenvalues{0.0, 0.0};  // lambda1 >= lambda2 >= 0
};

// -(1/2) C (Zbar o Zbar) C with C = I - (1/n) L: the classical-scaling
// transform of entrywise-squared dissimilarities. Output rows and columns
// sum to zero.
inline SquareMatrix double_center(const SquareMatrix& dissimilarity) {
  require_unit_interval(dissimilarity, "dissimilarity");
  require_zero_diagonal(dissimilarity, "dissimilarity");
  const std::size_t n = dissimilarity.order();
  std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
  double grand = 0.0;
  SquareMatrix squared(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double s = dissimilarity(i, j) * dissimilarity(i, j);
      squared(i, j) = s;
      row_mean[i] += s;
      col_mean[j] += s;
      grand += s;
    }
  for (std::size_t i = 0; i < n; ++i) {
    row_mean[i] /= static_cast<double>(n);
    col_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);
  SquareMatrix centered(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      centered(i, j) = -0.5 * (squared(i, j) - row_mean[i] - col_mean[j] + grand);
  return centered;
}

struct Embedding {
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> eigenvalues{0.0, 0.0};
};

// Top-two spectral embedding of a double-centered matrix. Negative
// eigenvalues are clamped to zero. The sign of each used eigenvector is fixed
// by making its largest-magnitude entry positive, so output is deterministic.
inline Embedding embed_2d(const SquareMatrix& centered) {
  const std::size_t n = centered.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(centered(i, j) - centered(j, i)) > 1e-12)
        throw ValidationError("embed_2d: centered matrix must be symmetric");

  Eigen::MatrixXd b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = centered(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw ComputationFailure("embed_2d: eigendecomposition failed");

  Embedding out;
  out.coords.assign(n, {0.0, 0.0});
  // Eigen sorts eigenvalues ascending; the top two sit at the end.
  for (int axis = 0; axis < 2; ++axis) {
    const int col = static_cast<int>(n) - 1 - axis;
    if (col < 0) break;
    const double lambda = std::max(solver.eigenvalues()(col), 0.0);
    out.eigenvalues[axis] = lambda;
    if (lambda == 0.0) continue;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    int pivot = 0;
    for (int i = 1; i < v.size(); ++i)
      if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
    if (v(pivot) < 0.0) v = -v;
    const double scale = std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i) out.coords[i][axis] = scale * v(static_cast<int>(i));
  }
  return out;
}

// Full layout of a population: MDS coordinates of the dissimilarity L - Z,
// circle diameters scale * p_i, and one directed link per positive
// off-diagonal adjacency entry. Self-loops are not drawn.
inline Layout make_layout(const Population& pop, double scale) {
  if (!(scale > 0.0)) throw ValidationError("make_layout: scale must be positive");
  const std::size_t n = pop.size();
  for (std::size_t i = 0; i < n; ++i)
    if (pop.similarity(i, i) != 1.0)
      throw ValidationError("make_layout: similarity diagonal must be 1 (category " +
                            std::to_string(i) + ")");
  SquareMatrix dissimilarity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dissimilarity(i, j) = 1.0 - pop.similarity(i, j);

  const Embedding embedding = embed_2d(double_center(dissimilarity));
  Layout layout;
  layout.coords = embedding.coords;
  layout.eigenvalues = embedding.eigenvalues;
  layout.diameters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) layout.diameters.push_back(scale * pop.proportions[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && pop.adjacency(i, j) > 0.0)
        layout.links.push_back({i, j, pop.adjacency(i, j)});
  return layout;
}

}  // namespace dsn
