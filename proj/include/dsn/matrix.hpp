#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dsn/errors.hpp"

namespace dsn {

// Dense square matrix of doubles, row-major. Shared representation for
// similarity, dissimilarity and adjacency matrices; role-specific bounds are
// checked by the call sites that interpret the entries.
class SquareMatrix {
 public:
  SquareMatrix() = default;

  explicit SquareMatrix(std::size_t order, double fill = 0.0)
      : order_(order), entries_(order * order, fill) {
    if (order == 0) throw ValidationError("SquareMatrix: order must be >= 1");
  }

  static SquareMatrix identity(std::size_t order) {
    SquareMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix ones(std::size_t order) { return SquareMatrix(order, 1.0); }

  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ValidationError("SquareMatrix: no rows");
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw DimensionMismatch("SquareMatrix: row " + std::to_string(i) +
                                " has length " + std::to_string(rows[i].size()) +
                                ", expected " + std::to_string(rows.size()));
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t order() const { return order_; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

  const std::vector<double>& entries() const { return entries_; }

  bool operator==(const SquareMatrix& other) const = default;

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
    return r;
  }

  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
  }

  friend SquareMatrix operator*(double s, const SquareMatrix& a) {
    SquareMatrix r = a;
    for (double& e : r.entries_) e *= s;
    return r;
  }

 private:
  std::size_t order_ = 0;
  std::vector<double> entries_;
};

// Entrywise (Hadamard) product.
inline SquareMatrix hadamard(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.order() != b.order())
    throw DimensionMismatch("hadamard: orders differ");
  SquareMatrix r(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) r(i, j) = a(i, j) * b(i, j);
  return r;
}

inline SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.order() != b.order())
    throw DimensionMismatch("matmul: orders differ");
  const std::size_t n = a.order();
  SquareMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline std::vector<double> matvec(const SquareMatrix& a, const std::vector<double>& v) {
  if (a.order() != v.size())
    throw DimensionMismatch("matvec: orders differ");
  std::vector<double> r(a.order(), 0.0);
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

// Similarity and adjacency roles require every entry in [0, 1].
inline void require_unit_interval(const SquareMatrix& m, const std::string& role) {
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) {
      const double e = m(i, j);
      if (!(e >= 0.0 && e <= 1.0))
        throw ValidationError(role + " matrix entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") = " + std::to_string(e) +
                              " outside [0,1]");
    }
}

inline void require_zero_diagonal(const SquareMatrix& m, const std::string& role) {
  for (std::size_t i = 0; i < m.order(); ++i)
    if (m(i, i) != 0.0)
      throw ValidationError(role + " matrix diagonal entry " + std::to_string(i) +
                            " must be 0");
}

}  // namespace dsn
