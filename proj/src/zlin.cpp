#include "chinu/zlin.hpp"

#include <algorithm>
#include <sstream>

namespace chinu {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DomainError("matrix dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += x * rhs.at(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(size_t i, size_t j) {
  if (i == j) return;
  for (size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row(size_t i, size_t j, const Int& q) {
  if (q == 0) return;
  for (size_t c = 0; c < cols_; ++c) at(i, c) -= q * at(j, c);
}

void IntMatrix::add_col(size_t i, size_t j, const Int& q) {
  if (q == 0) return;
  for (size_t r = 0; r < rows_; ++r) at(r, i) -= q * at(r, j);
}

void IntMatrix::negate_row(size_t i) {
  for (size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
    os << "]\n";
  }
  return os.str();
}

Int InvariantFactors::order() const {
  if (free_rank > 0) return 0;
  Int o = 1;
  for (const Int& d : factors) o *= d;
  return o;
}

std::string InvariantFactors::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < factors.size(); ++i) os << (i ? ", " : "") << factors[i];
  os << ')';
  if (free_rank > 0) os << " + Z^" << free_rank;
  return os.str();
}

namespace {

// Core in-place reduction to a diagonal matrix with divisibility chain.
// u/v, when non-null, accumulate the row/column operations. The pivot (least
// absolute value, (row, col) tie-break) is re-selected after every clearing
// pass; remainders are strictly smaller than the pivot, so each pass either
// finishes the corner or strictly shrinks the minimum, which both terminates
// and keeps intermediate growth in check.
void snf_reduce(IntMatrix& m, IntMatrix* u, IntMatrix* v) {
  const size_t R = m.rows(), C = m.cols();
  size_t t = 0;
  while (t < R && t < C) {
    bool corner_done = false;
    while (!corner_done) {
      // Pivot selection over the trailing block.
      size_t pi = 0, pj = 0;
      bool found = false;
      Int best;
      for (size_t i = t; i < R; ++i)
        for (size_t j = t; j < C; ++j) {
          const Int& x = m.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (!found || ax < best) {
            found = true;
            best = ax;
            pi = i;
            pj = j;
          }
        }
      if (!found) return;  // trailing block vanished; diagonal complete
      if (pi != t) {
        m.swap_rows(t, pi);
        if (u) u->swap_rows(t, pi);
      }
      if (pj != t) {
        m.swap_cols(t, pj);
        if (v) v->swap_cols(t, pj);
      }
      const Int pivot = m.at(t, t);
      bool residue = false;
      for (size_t i = t + 1; i < R; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / pivot;
        m.add_row(i, t, q);
        if (u) u->add_row(i, t, q);
        if (m.at(i, t) != 0) residue = true;
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / pivot;
        m.add_col(j, t, q);
        if (v) v->add_col(j, t, q);
        if (m.at(t, j) != 0) residue = true;
      }
      if (residue) continue;  // a remainder < |pivot| exists; re-select
      // Corner cleared; enforce divisibility over the rest.
      bool repaired = false;
      for (size_t i = t + 1; i < R && !repaired; ++i)
        for (size_t j = t + 1; j < C; ++j)
          if (m.at(i, j) % pivot != 0) {
            m.add_row(t, i, Int(-1));  // row t += row i
            if (u) u->add_row(t, i, Int(-1));
            repaired = true;
            break;
          }
      corner_done = !repaired;
    }
    if (m.at(t, t) < 0) {
      m.negate_row(t);
      if (u) u->negate_row(t);
    }
    ++t;
  }
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult r{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  snf_reduce(r.d, &r.u, &r.v);
  return r;
}

std::vector<Int> smith_diagonal(IntMatrix m, IntMatrix* v) {
  IntMatrix vt;
  if (v) {
    vt = IntMatrix::identity(m.cols());
  }
  snf_reduce(m, nullptr, v ? &vt : nullptr);
  if (v) *v = std::move(vt);
  std::vector<Int> d;
  for (size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    if (m.at(i, i) == 0) break;
    d.push_back(m.at(i, i));
  }
  return d;
}

InvariantFactors invariants_from_relations(size_t ngens, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != ngens)
    throw DomainError("relation matrix column count does not match generator count");
  std::vector<Int> d = smith_diagonal(relations);
  InvariantFactors inv;
  for (const Int& x : d)
    if (x > 1) inv.factors.push_back(x);
  inv.free_rank = ngens - d.size();
  return inv;
}

RowLattice::RowLattice(const IntMatrix& rows, size_t cols) : cols_(cols) {
  if (rows.rows() > 0 && rows.cols() != cols)
    throw DomainError("lattice row width mismatch");
  IntMatrix m = rows.rows() > 0 ? rows : IntMatrix(0, cols);
  if (rows.rows() == 0) {
    v_ = IntMatrix::identity(cols);
    return;
  }
  diag_ = smith_diagonal(m, &v_);
}

bool RowLattice::contains(const std::vector<Int>& v) const {
  if (v.size() != cols_) throw DomainError("lattice vector width mismatch");
  // v in rowspace(M)  <=>  v*V has entry i divisible by d_i, zero past rank.
  for (size_t j = 0; j < cols_; ++j) {
    Int w = 0;
    for (size_t i = 0; i < cols_; ++i)
      if (v[i] != 0) w += v[i] * v_.at(i, j);
    if (j < diag_.size()) {
      if (w % diag_[j] != 0) return false;
    } else {
      if (w != 0) return false;
    }
  }
  return true;
}

}  // namespace chinu
