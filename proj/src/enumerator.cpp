#include "chinu/enumerator.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "chinu/errors.hpp"

namespace chinu {

namespace {

constexpr int32_t kUndef = -1;

// Working state of one enumeration. Cosets are created live and may die by
// coincidence; the table is compacted and standardized at the end.
class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup, size_t limit)
      : pres_(p), width_(2 * p.ngens()), limit_(limit) {
    for (const Word& w : p.relators) {
      std::vector<int32_t> cols = to_cols(w);
      if (!cols.empty()) relators_.push_back(std::move(cols));
    }
    std::sort(relators_.begin(), relators_.end());
    relators_.erase(std::unique(relators_.begin(), relators_.end()), relators_.end());
    std::stable_sort(relators_.begin(), relators_.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (const Word& w : subgroup) {
      if (w.ngens() != p.ngens()) throw DomainError("subgroup word over a different alphabet");
      std::vector<int32_t> cols = to_cols(w);
      if (!cols.empty()) subgroup_.push_back(std::move(cols));
    }
    new_coset();  // coset 0 = subgroup coset
  }

  CosetTable run() {
    for (const auto& w : subgroup_) scan_and_fill(0, w);
    for (int32_t a = 0; a < int32_t(parent_.size()); ++a) {
      if (dead(a)) continue;
      for (const auto& w : relators_) {
        scan_and_fill(a, w);
        if (dead(a)) break;
      }
      if (dead(a)) continue;
      for (int32_t col = 0; col < int32_t(width_); ++col)
        if (cell(a, col) == kUndef) define(a, col);
    }
    return finish();
  }

 private:
  std::vector<int32_t> to_cols(const Word& w) const {
    std::vector<int32_t> cols;
    cols.reserve(w.size());
    for (Letter l : w.letters()) cols.push_back(letter_col(l));
    return cols;
  }

  int32_t& cell(int32_t c, int32_t col) { return cells_[size_t(c) * width_ + col]; }

  bool dead(int32_t c) const { return parent_[c] != c; }

  int32_t rep(int32_t c) {
    int32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int32_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  int32_t new_coset() {
    if (parent_.size() >= limit_)
      throw LimitError("coset limit of " + std::to_string(limit_) +
                       " exhausted; the subgroup may have infinite index or the budget is too small");
    parent_.push_back(int32_t(parent_.size()));
    cells_.resize(cells_.size() + width_, kUndef);
    return int32_t(parent_.size()) - 1;
  }

  void define(int32_t c, int32_t col) {
    int32_t d = new_coset();
    cell(c, col) = d;
    cell(d, col ^ 1) = c;
  }

  void merge(int32_t a, int32_t b, std::deque<int32_t>& q) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // keep the smaller representative; coset 0 never dies
    q.push_back(b);
  }

  void coincidence(int32_t a, int32_t b) {
    std::deque<int32_t> q;
    merge(a, b, q);
    while (!q.empty()) {
      int32_t g = q.front();
      q.pop_front();
      for (int32_t col = 0; col < int32_t(width_); ++col) {
        int32_t d = cell(g, col);
        if (d == kUndef) continue;
        cell(d, col ^ 1) = kUndef;  // drop the mirrored entry before transfer
        int32_t mu = rep(g);
        int32_t nu = rep(d);
        if (cell(mu, col) != kUndef) {
          merge(nu, cell(mu, col), q);
        } else if (cell(nu, col ^ 1) != kUndef) {
          merge(mu, cell(nu, col ^ 1), q);
        } else {
          cell(mu, col) = nu;
          cell(nu, col ^ 1) = mu;
        }
      }
    }
  }

  void scan_and_fill(int32_t a, const std::vector<int32_t>& w) {
    a = rep(a);
    int32_t f = a, b = a;
    int32_t i = 0, j = int32_t(w.size()) - 1;
    while (true) {
      while (i <= j && cell(f, w[i]) != kUndef) f = cell(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && cell(b, w[j] ^ 1) != kUndef) b = cell(b, w[j--] ^ 1);
      if (j < i) {
        if (f != b) coincidence(f, b);
        return;
      }
      if (j == i) {
        cell(f, w[i]) = b;
        cell(b, w[i] ^ 1) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  CosetTable finish() {
    // Compact to live cosets, then renumber breadth-first over the columns
    // so coset numbering (and thus every derived word) is canonical.
    std::vector<int32_t> live;
    for (int32_t c = 0; c < int32_t(parent_.size()); ++c)
      if (!dead(c)) live.push_back(c);

    std::vector<int32_t> order(1, 0);  // BFS over live cosets, root = coset 0
    std::vector<int32_t> pos(parent_.size(), kUndef);
    pos[0] = 0;
    for (size_t head = 0; head < order.size(); ++head) {
      int32_t c = order[head];
      for (int32_t col = 0; col < int32_t(width_); ++col) {
        int32_t d = cell(c, col);
        if (d == kUndef)
          throw Error("enumeration finished with an incomplete table");
        d = rep(d);
        if (pos[d] == kUndef) {
          pos[d] = int32_t(order.size());
          order.push_back(d);
        }
      }
    }
    if (order.size() != live.size())
      throw Error("coset graph is not transitive after enumeration");

    CosetTable t;
    t.ngens = pres_.ngens();
    t.ncosets = order.size();
    t.cells.assign(order.size() * width_, kUndef);
    for (size_t r = 0; r < order.size(); ++r)
      for (int32_t col = 0; col < int32_t(width_); ++col)
        t.cells[r * width_ + col] = pos[rep(cell(order[r], col))];
    validate_table(t, pres_);
    return t;
  }

  const Presentation& pres_;
  size_t width_;
  size_t limit_;
  std::vector<std::vector<int32_t>> relators_;
  std::vector<std::vector<int32_t>> subgroup_;
  std::vector<int32_t> parent_;  // union-find over cosets
  std::vector<int32_t> cells_;
};

}  // namespace

int32_t CosetTable::apply(int32_t coset, const Word& w) const {
  for (Letter l : w.letters()) coset = at(coset, letter_col(l));
  return coset;
}

std::string CosetTable::dump_tsv(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "coset";
  for (size_t g = 0; g < ngens; ++g) os << '\t' << names.at(g) << '\t' << names.at(g) << "^-1";
  os << '\n';
  for (size_t r = 0; r < ncosets; ++r) {
    os << r + 1;
    for (size_t col = 0; col < width(); ++col) os << '\t' << cells[r * width() + col] + 1;
    os << '\n';
  }
  return os.str();
}

CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgroup,
                     const EnumerationOptions& opt) {
  p.validate();
  if (opt.limit < 1) throw DomainError("coset limit must be at least 1");
  Enumerator e(p, subgroup, opt.limit);
  CosetTable t = e.run();
  t.subgroup_generators = subgroup;
  return t;
}

void validate_table(const CosetTable& t, const Presentation& p) {
  const size_t w = t.width();
  for (size_t r = 0; r < t.ncosets; ++r)
    for (size_t col = 0; col < w; ++col) {
      int32_t d = t.cells[r * w + col];
      if (d < 0 || size_t(d) >= t.ncosets) throw Error("coset table is not closed");
      if (t.cells[size_t(d) * w + (col ^ 1)] != int32_t(r))
        throw Error("coset table violates inverse pairing");
    }
  for (const Word& rel : p.relators)
    for (size_t r = 0; r < t.ncosets; ++r)
      if (t.apply(int32_t(r), rel) != int32_t(r))
        throw Error("relator does not trace trivially: " + rel.str(p.generators));
  for (const Word& s : t.subgroup_generators)
    if (t.apply(0, s) != 0)
      throw Error("subgroup generator does not fix coset 0: " + s.str(p.generators));
}

}  // namespace chinu
