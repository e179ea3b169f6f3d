#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "chinu/errors.hpp"

namespace chinu {

using Int = boost::multiprecision::cpp_int;

/// Dense rectangular matrix of arbitrary-precision integers. SNF entry
/// growth is unbounded in general, so fixed-width integers are not an option
/// here.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Int& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const Int& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  void swap_rows(size_t i, size_t j);
  void swap_cols(size_t i, size_t j);
  /// row i -= q * row j
  void add_row(size_t i, size_t j, const Int& q);
  /// col i -= q * col j
  void add_col(size_t i, size_t j, const Int& q);
  void negate_row(size_t i);

  std::string str() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// Invariant factors d1 | d2 | ... | dr (each >= 2) plus free rank;
/// describes the abelian group  Z/d1 + ... + Z/dr + Z^free.
struct InvariantFactors {
  std::vector<Int> factors;
  size_t free_rank = 0;

  bool trivial() const { return factors.empty() && free_rank == 0; }
  Int order() const;  // 0 when free_rank > 0
  bool operator==(const InvariantFactors&) const = default;
  std::string str() const;
};

struct SnfResult {
  IntMatrix d, u, v;  // u * m * v == d
};

/// Smith normal form with unimodular transforms: U*M*V = D, D diagonal with
/// d1 | d2 | ... and nonnegative entries. Pivot rule: nonzero entry of least
/// absolute value, ties broken by (row, col).
SnfResult smith_normal_form(const IntMatrix& m);

/// Diagonal of the Smith form only; `v` (column transform) optionally
/// tracked. Used for large relation matrices where U would be huge.
std::vector<Int> smith_diagonal(IntMatrix m, IntMatrix* v = nullptr);

/// Invariant factors of Z^ngens / (row space of relations).
InvariantFactors invariants_from_relations(size_t ngens, const IntMatrix& relations);

/// Membership test for the integer row lattice spanned by the rows of a
/// fixed matrix; the SNF data is computed once.
class RowLattice {
 public:
  explicit RowLattice(const IntMatrix& rows, size_t cols);
  bool contains(const std::vector<Int>& v) const;
  size_t cols() const { return cols_; }

 private:
  size_t cols_;
  IntMatrix v_;            // column transform
  std::vector<Int> diag_;  // smith diagonal (nonzero prefix)
};

}  // namespace chinu
