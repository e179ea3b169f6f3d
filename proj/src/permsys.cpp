#include "chinu/permsys.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace chinu {

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p]) throw DomainError("images do not form a bijection");
    seen[p] = true;
  }
}

Perm Perm::identity(size_t n) {
  Perm p;
  p.img_.resize(n);
  std::iota(p.img_.begin(), p.img_.end(), 0);
  return p;
}

bool Perm::is_identity() const {
  for (Point i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::compose(const Perm& then) const {
  if (degree() != then.degree()) throw DomainError("composing permutations of mixed domains");
  Perm out;
  out.img_.resize(degree());
  for (Point i = 0; i < degree(); ++i) out.img_[i] = then.img_[img_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.img_.resize(degree());
  for (Point i = 0; i < degree(); ++i) out.img_[img_[i]] = i;
  return out;
}

Perm Perm::conjugated_by(const Perm& t) const {
  if (degree() != t.degree()) throw DomainError("conjugating permutations of mixed domains");
  Perm out;
  out.img_.resize(degree());
  for (Point i = 0; i < degree(); ++i) out.img_[t.img_[i]] = t.img_[img_[i]];
  return out;
}

std::string Perm::cycles() const {
  std::ostringstream os;
  std::vector<bool> done(degree(), false);
  bool any = false;
  for (Point i = 0; i < degree(); ++i) {
    if (done[i] || img_[i] == i) continue;
    any = true;
    os << '(' << i + 1;
    done[i] = true;
    for (Point j = img_[i]; j != i; j = img_[j]) {
      os << ' ' << j + 1;
      done[j] = true;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

size_t PointSet::count() const {
  size_t c = 0;
  for (uint64_t w : bits_) c += std::popcount(w);
  return c;
}

PointSet PointSet::intersect(const PointSet& rhs) const {
  if (bits_.size() != rhs.bits_.size()) throw DomainError("point sets over mixed domains");
  PointSet out = *this;
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= rhs.bits_[i];
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic Schreier-Sims chain for generic (non-regular) handles.
// Restart-style: whenever a sifted Schreier generator survives, it joins the
// strong generating set and the whole chain is rebuilt. Domains here stay
// small (a few thousand points at most), so simplicity wins over speed.

namespace {

class StabChain {
 public:
  StabChain(size_t domain, const std::vector<Perm>& gens) : domain_(domain) {
    for (const Perm& g : gens)
      if (!g.is_identity()) sgens_.push_back(g);
    for (bool closed = false; !closed;) {
      rebuild();
      closed = close_once();
    }
    for (const Perm& g : gens)
      if (!contains(g)) throw Error("stabilizer chain certificate rejects its own generator");
  }

  uint64_t order() const {
    uint64_t o = 1;
    for (const auto& lv : levels_) o *= lv.orbit.size();
    return o;
  }

  bool contains(const Perm& g) const {
    Perm r = g;
    for (const auto& lv : levels_) {
      Point d = r[lv.base];
      if (lv.sv_parent[d] == kNone && d != lv.base) return false;
      r = r.compose(transversal(lv, d).inverse());
    }
    return r.is_identity();
  }

 private:
  static constexpr int32_t kNone = -2;

  struct Level {
    Point base = 0;
    std::vector<size_t> gen_idx;       // indices into sgens_ fixing all earlier bases
    std::vector<Point> orbit;          // discovery order, orbit[0] == base
    std::vector<int32_t> sv_parent;    // kNone outside orbit, -1 at base
    std::vector<int32_t> sv_gen;
  };

  void rebuild() {
    // Bases: reuse existing ones, extend so every strong generator moves one.
    for (const Perm& g : sgens_) {
      bool moves = false;
      for (Point b : bases_)
        if (g[b] != b) {
          moves = true;
          break;
        }
      if (!moves) {
        for (Point p = 0; p < domain_; ++p)
          if (g[p] != p) {
            bases_.push_back(p);
            break;
          }
      }
    }
    levels_.clear();
    for (Point b : bases_) {
      Level lv;
      lv.base = b;
      for (size_t i = 0; i < sgens_.size(); ++i) {
        bool fixes_earlier = true;
        for (const Level& prev : levels_)
          if (sgens_[i][prev.base] != prev.base) {
            fixes_earlier = false;
            break;
          }
        if (fixes_earlier) lv.gen_idx.push_back(i);
      }
      lv.sv_parent.assign(domain_, kNone);
      lv.sv_gen.assign(domain_, kNone);
      lv.sv_parent[b] = -1;
      lv.orbit.push_back(b);
      for (size_t head = 0; head < lv.orbit.size(); ++head) {
        Point p = lv.orbit[head];
        for (size_t gi : lv.gen_idx) {
          Point q = sgens_[gi][p];
          if (lv.sv_parent[q] == kNone) {
            lv.sv_parent[q] = int32_t(p);
            lv.sv_gen[q] = int32_t(gi);
            lv.orbit.push_back(q);
          }
        }
      }
      levels_.push_back(std::move(lv));
    }
    // Drop trailing bases whose level became redundant (no generators).
    while (!levels_.empty() && levels_.back().gen_idx.empty()) {
      levels_.pop_back();
      bases_.pop_back();
    }
  }

  Perm transversal(const Level& lv, Point p) const {
    std::vector<size_t> path;
    for (Point q = p; lv.sv_parent[q] != -1; q = Point(lv.sv_parent[q]))
      path.push_back(size_t(lv.sv_gen[q]));
    Perm u = Perm::identity(domain_);
    for (auto it = path.rbegin(); it != path.rend(); ++it) u = u.compose(sgens_[*it]);
    return u;
  }

  // One full pass over all Schreier generators; returns true when every one
  // of them sifted to the identity.
  bool close_once() {
    for (size_t li = 0; li < levels_.size(); ++li) {
      const Level& lv = levels_[li];
      for (Point p : lv.orbit) {
        Perm up = transversal(lv, p);
        for (size_t gi : lv.gen_idx) {
          const Perm& s = sgens_[gi];
          Perm schreier = up.compose(s).compose(transversal(lv, s[p]).inverse());
          Perm r = std::move(schreier);
          bool member = true;
          for (size_t lj = li + 1; lj < levels_.size(); ++lj) {
            const Level& lw = levels_[lj];
            Point d = r[lw.base];
            if (lw.sv_parent[d] == kNone && d != lw.base) {
              member = false;
              break;
            }
            r = r.compose(transversal(lw, d).inverse());
          }
          if (member && r.is_identity()) continue;
          sgens_.push_back(std::move(r));
          return false;
        }
      }
    }
    return true;
  }

  size_t domain_;
  std::vector<Perm> sgens_;
  std::vector<Point> bases_;
  std::vector<Level> levels_;
};

}  // namespace

// ---------------------------------------------------------------------------
// PermGroup

PermGroupPtr PermGroup::from_generators(size_t domain, std::vector<Perm> gens) {
  for (const Perm& g : gens)
    if (g.degree() != domain) throw DomainError("generators act on mixed domains");
  auto g = std::shared_ptr<PermGroup>(new PermGroup());
  g->degree_ = domain;
  g->gens_ = std::move(gens);
  auto chain = std::make_shared<StabChain>(domain, g->gens_);
  g->order_ = chain->order();
  g->chain_ = std::move(chain);
  return g;
}

void PermGroup::init_regular(CosetTable t, std::optional<Presentation> p) {
  degree_ = t.ncosets;
  order_ = t.ncosets;
  Regular reg;
  reg.bfs_parent.assign(t.ncosets, -1);
  reg.bfs_col.assign(t.ncosets, -1);
  std::vector<bool> seen(t.ncosets, false);
  seen[0] = true;
  size_t found = 1;
  for (int32_t r = 0; r < int32_t(t.ncosets); ++r) {
    for (int32_t col = 0; col < int32_t(t.width()); ++col) {
      int32_t d = t.at(r, col);
      if (!seen[d]) {
        if (size_t(d) != found) throw Error("regular table is not standardized");
        seen[d] = true;
        ++found;
        reg.bfs_parent[d] = r;
        reg.bfs_col[d] = col;
      }
    }
  }
  if (found != t.ncosets) throw Error("regular table is not transitive");
  for (size_t i = 0; i < t.ngens; ++i) {
    std::vector<Point> img(t.ncosets);
    for (size_t r = 0; r < t.ncosets; ++r) img[r] = Point(t.at(int32_t(r), int32_t(2 * i)));
    gens_.push_back(Perm(std::move(img)));
  }
  reg.table = std::move(t);
  reg.pres = std::move(p);
  regular_ = std::move(reg);
}

PermGroupPtr PermGroup::regular_from_table(CosetTable t, Presentation p) {
  if (!t.subgroup_generators.empty())
    throw DomainError("regular representation requires an enumeration over the trivial subgroup");
  validate_table(t, p);
  auto g = std::shared_ptr<PermGroup>(new PermGroup());
  g->init_regular(std::move(t), std::move(p));
  return g;
}

size_t PermGroup::degree() const { return degree_; }
uint64_t PermGroup::order() const { return order_; }

const std::optional<Presentation>& PermGroup::presentation() const {
  static const std::optional<Presentation> none;
  return regular_ ? regular_->pres : none;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) throw DomainError("membership test across domains");
  if (regular_) {
    Point e = g[0];
    return eval_perm(element_word(e)) == g;
  }
  return static_cast<const StabChain*>(chain_.get())->contains(g);
}

bool PermGroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i].compose(gens_[j]) != gens_[j].compose(gens_[i])) return false;
  return true;
}

Word PermGroup::element_word(Point e) const {
  if (!regular_) throw DomainError("element words require a regular realization");
  std::vector<Letter> letters;
  for (Point p = e; regular_->bfs_parent[p] != -1; p = Point(regular_->bfs_parent[p]))
    letters.push_back(col_letter(regular_->bfs_col[p]));
  std::reverse(letters.begin(), letters.end());
  return Word::reduced(regular_->table.ngens, letters);
}

Point PermGroup::mul(Point a, Point b) const {
  if (!regular_) throw DomainError("element calculus requires a regular realization");
  // chase the canonical word of b starting from a
  std::vector<int32_t> cols;
  for (Point p = b; regular_->bfs_parent[p] != -1; p = Point(regular_->bfs_parent[p]))
    cols.push_back(regular_->bfs_col[p]);
  Point x = a;
  for (auto it = cols.rbegin(); it != cols.rend(); ++it) x = Point(regular_->table.at(int32_t(x), *it));
  return x;
}

Point PermGroup::inv(Point a) const {
  if (!regular_) throw DomainError("element calculus requires a regular realization");
  Point x = 0;
  for (Point p = a; regular_->bfs_parent[p] != -1; p = Point(regular_->bfs_parent[p]))
    x = Point(regular_->table.at(int32_t(x), regular_->bfs_col[p] ^ 1));
  return x;
}

Point PermGroup::eval_point(Point start, const Word& w) const {
  if (!regular_) throw DomainError("element calculus requires a regular realization");
  return Point(regular_->table.apply(int32_t(start), w));
}

Perm PermGroup::eval_perm(const Word& w) const {
  if (!regular_) throw DomainError("element calculus requires a regular realization");
  std::vector<Point> img(degree_);
  std::vector<int32_t> cols;
  cols.reserve(w.size());
  for (Letter l : w.letters()) cols.push_back(letter_col(l));
  for (Point p = 0; p < degree_; ++p) {
    int32_t x = int32_t(p);
    for (int32_t c : cols) x = regular_->table.at(x, c);
    img[p] = Point(x);
  }
  return Perm(std::move(img));
}

Perm PermGroup::generator_perm(size_t i) const { return gens_.at(i); }

uint64_t PermGroup::element_order(Point e) const {
  uint64_t k = 1;
  for (Point x = e; x != 0; x = mul(x, e)) ++k;
  return k;
}

std::pair<int32_t, int32_t> PermGroup::bfs_edge(Point e) const {
  if (!regular_) throw DomainError("element calculus requires a regular realization");
  return {regular_->bfs_parent[e], regular_->bfs_col[e]};
}

Subgroup PermGroup::whole_group() const {
  return subgroup_generated(shared_from_this(), gens_);
}

Subgroup PermGroup::trivial_subgroup() const {
  return subgroup_generated(shared_from_this(), {});
}

// ---------------------------------------------------------------------------
// Subgroup machinery

namespace {

// Orbit of 0 under explicit permutations: the element set of the subgroup
// they generate inside a regular parent.
void extend_orbit(PointSet& elems, std::vector<Point>& list, const std::vector<Perm>& gens,
                  size_t from_head = 0) {
  for (size_t head = from_head; head < list.size(); ++head) {
    Point p = list[head];
    for (const Perm& g : gens) {
      Point q = g[p];
      if (!elems.test(q)) {
        elems.set(q);
        list.push_back(q);
      }
    }
  }
}

void verify_seed_membership(const PermGroup& parent, const std::vector<Perm>& seeds) {
  // Full membership verification is linear in degree * word length per seed;
  // for very large regular domains internal constructions are already
  // products of parent generators, so cap the verified size.
  if (parent.degree() > 4096) return;
  for (const Perm& s : seeds)
    if (!parent.contains(s)) throw DomainError("subgroup seed is not a member of the parent group");
}

}  // namespace

std::vector<Point> Subgroup::element_list() const {
  if (!parent_->is_regular()) throw DomainError("element list requires a regular parent");
  std::vector<Point> out;
  out.reserve(order_);
  for (Point p = 0; p < parent_->degree(); ++p)
    if (elems_.test(p)) out.push_back(p);
  return out;
}

bool Subgroup::contains_point(Point e) const {
  if (!parent_->is_regular()) throw DomainError("point membership requires a regular parent");
  return elems_.test(e);
}

bool Subgroup::contains(const Perm& g) const {
  if (g.degree() != parent_->degree()) throw DomainError("membership test across domains");
  if (parent_->is_regular()) {
    Point e = g[0];
    if (!elems_.test(e)) return false;
    return parent_->eval_perm(parent_->element_word(e)) == g;
  }
  return static_cast<const StabChain*>(chain_.get())->contains(g);
}

bool Subgroup::same_subgroup(const Subgroup& rhs) const {
  if (parent_ != rhs.parent_) throw DomainError("comparing subgroups of different parents");
  if (order_ != rhs.order_) return false;
  if (parent_->is_regular()) return elems_ == rhs.elems_;
  return contained_in(rhs);
}

bool Subgroup::contained_in(const Subgroup& rhs) const {
  if (parent_ != rhs.parent_) throw DomainError("comparing subgroups of different parents");
  if (parent_->is_regular()) {
    for (Point p : element_list())
      if (!rhs.elems_.test(p)) return false;
    return true;
  }
  for (const Perm& g : gens_)
    if (!rhs.contains(g)) return false;
  return true;
}

bool Subgroup::normal_in_parent() const {
  // Conjugates of members by members stay inside the parent, so the point
  // test is sound for regular parents (semiregular action).
  for (const Perm& p : parent_->generators())
    for (const Perm& g : gens_) {
      Perm c = g.conjugated_by(p);
      if (parent_->is_regular() ? !elems_.test(c[0]) : !contains(c)) return false;
    }
  return true;
}

Subgroup detail_make_regular_subgroup(const PermGroupPtr& parent, std::vector<Perm> gens,
                                      PointSet elems, uint64_t order) {
  Subgroup s;
  s.parent_ = parent;
  s.gens_ = std::move(gens);
  s.elems_ = std::move(elems);
  s.order_ = order;
  if (parent->order() % s.order_ != 0) throw Error("subgroup order does not divide group order");
  return s;
}

Subgroup subgroup_generated(const PermGroupPtr& g, std::vector<Perm> seeds) {
  for (const Perm& s : seeds)
    if (s.degree() != g->degree()) throw DomainError("seed acts on the wrong domain");
  std::erase_if(seeds, [](const Perm& p) { return p.is_identity(); });
  if (g->is_regular()) {
    verify_seed_membership(*g, seeds);
    PointSet elems(g->degree());
    elems.set(0);
    std::vector<Point> list{0};
    extend_orbit(elems, list, seeds);
    return detail_make_regular_subgroup(g, std::move(seeds), std::move(elems), list.size());
  }
  Subgroup s;
  s.parent_ = g;
  s.gens_ = std::move(seeds);
  for (const Perm& p : s.gens_)
    if (!g->contains(p)) throw DomainError("subgroup seed is not a member of the parent group");
  auto chain = std::make_shared<StabChain>(g->degree(), s.gens_);
  s.order_ = chain->order();
  s.chain_ = std::move(chain);
  if (g->order() % s.order_ != 0) throw Error("subgroup order does not divide group order");
  return s;
}

namespace {

// Conjugation closure: extends `sub` until it is closed under conjugation by
// `conjugators`. Rebuilds chains lazily on the generic path.
Subgroup close_under_conjugation(const PermGroupPtr& g, std::vector<Perm> seeds,
                                 const std::vector<Perm>& conjugators) {
  std::erase_if(seeds, [](const Perm& p) { return p.is_identity(); });
  if (g->is_regular()) {
    verify_seed_membership(*g, seeds);
    PointSet elems(g->degree());
    elems.set(0);
    std::vector<Point> list{0};
    std::vector<Perm> gens;
    std::deque<Perm> queue;
    for (Perm& p : seeds) {
      if (!elems.test(p[0])) {
        gens.push_back(p);
        extend_orbit(elems, list, gens, 0);
        queue.push_back(std::move(p));
      }
    }
    while (!queue.empty()) {
      Perm q = std::move(queue.front());
      queue.pop_front();
      for (const Perm& c : conjugators) {
        Perm conj = q.conjugated_by(c);
        if (!elems.test(conj[0])) {
          gens.push_back(conj);
          extend_orbit(elems, list, gens, 0);
          queue.push_back(std::move(conj));
        }
      }
    }
    return detail_make_regular_subgroup(g, std::move(gens), std::move(elems), list.size());
  }
  // generic path
  Subgroup cur = subgroup_generated(g, seeds);
  std::deque<Perm> queue(cur.generators().begin(), cur.generators().end());
  std::vector<Perm> gens = cur.generators();
  while (!queue.empty()) {
    Perm q = std::move(queue.front());
    queue.pop_front();
    for (const Perm& c : conjugators) {
      Perm conj = q.conjugated_by(c);
      if (!cur.contains(conj)) {
        gens.push_back(conj);
        cur = subgroup_generated(g, gens);
        queue.push_back(std::move(conj));
      }
    }
  }
  return cur;
}

}  // namespace

Subgroup normal_closure(const PermGroupPtr& g, const std::vector<Perm>& seeds) {
  return close_under_conjugation(g, seeds, g->generators());
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw DomainError("joining subgroups of different parents");
  std::vector<Perm> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return subgroup_generated(a.parent(), gens);
}

Subgroup commutator_subgroup(const PermGroupPtr& g, const Subgroup& a, const Subgroup& b) {
  if (a.parent() != g || b.parent() != g)
    throw DomainError("commutator subgroup arguments must live in the given group");
  std::vector<Perm> seeds;
  for (const Perm& x : a.generators())
    for (const Perm& y : b.generators()) {
      Perm c = x.inverse().compose(y.inverse()).compose(x).compose(y);
      if (!c.is_identity()) seeds.push_back(std::move(c));
    }
  std::vector<Perm> conjugators = a.generators();
  conjugators.insert(conjugators.end(), b.generators().begin(), b.generators().end());
  return close_under_conjugation(g, std::move(seeds), conjugators);
}

Subgroup derived_subgroup(const PermGroupPtr& g) {
  Subgroup whole = g->whole_group();
  return commutator_subgroup(g, whole, whole);
}

std::vector<Perm> element_closure(size_t domain, const std::vector<Perm>& gens, size_t cap) {
  std::vector<Perm> order{Perm::identity(domain)};
  std::set<Perm> seen{order[0]};
  for (size_t head = 0; head < order.size(); ++head) {
    for (const Perm& g : gens) {
      Perm h = order[head].compose(g);
      if (seen.insert(h).second) {
        if (order.size() + 1 > cap)
          throw LimitError("element enumeration exceeded the threshold of " + std::to_string(cap));
        order.push_back(std::move(h));
      }
    }
  }
  return order;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw DomainError("intersecting subgroups of different parents");
  if (std::min(a.order(), b.order()) > kElementThreshold)
    throw LimitError("intersection operands exceed the element-enumeration threshold");
  const PermGroupPtr& g = a.parent();
  if (g->is_regular()) {
    PointSet common = a.elements().intersect(b.elements());
    // recover generators by greedy doubling over the point set
    std::vector<Perm> gens;
    PointSet closed(g->degree());
    closed.set(0);
    std::vector<Point> list{0};
    for (Point p = 0; p < g->degree(); ++p) {
      if (!common.test(p) || closed.test(p)) continue;
      gens.push_back(g->eval_perm(g->element_word(p)));
      extend_orbit(closed, list, gens, 0);
    }
    if (!(closed == common)) throw Error("intersection point set is not a subgroup");
    return detail_make_regular_subgroup(g, std::move(gens), std::move(common), list.size());
  }
  const Subgroup& small = a.order() <= b.order() ? a : b;
  const Subgroup& large = a.order() <= b.order() ? b : a;
  std::vector<Perm> kept;
  for (const Perm& e : element_closure(g->degree(), small.generators(), kElementThreshold))
    if (large.contains(e) && !e.is_identity()) kept.push_back(e);
  return subgroup_generated(g, kept);
}

std::vector<Subgroup> lower_central_series(const PermGroupPtr& g) {
  std::vector<Subgroup> series;
  series.push_back(g->whole_group());
  while (true) {
    Subgroup next = commutator_subgroup(g, series.back(), g->whole_group());
    bool stable = next.same_subgroup(series.back());
    series.push_back(std::move(next));
    if (stable) break;
    if (series.back().trivial()) break;
  }
  return series;
}

Subgroup center(const PermGroupPtr& g) {
  if (g->order() > kElementThreshold)
    throw LimitError("center computation exceeds the element-enumeration threshold");
  if (g->is_regular()) {
    // z is central iff it commutes with every generator; on elements this is
    // a pair of table chases per generator.
    std::vector<Point> gen_pts;
    for (size_t i = 0; i < g->generators().size(); ++i) gen_pts.push_back(g->generators()[i][0]);
    std::vector<Perm> gens;
    PointSet closed(g->degree());
    closed.set(0);
    std::vector<Point> list{0};
    PointSet central(g->degree());
    for (Point p = 0; p < g->degree(); ++p) {
      bool ok = true;
      for (Point s : gen_pts)
        if (g->mul(p, s) != g->mul(s, p)) {
          ok = false;
          break;
        }
      if (ok) central.set(p);
    }
    for (Point p = 0; p < g->degree(); ++p) {
      if (!central.test(p) || closed.test(p)) continue;
      gens.push_back(g->eval_perm(g->element_word(p)));
      extend_orbit(closed, list, gens, 0);
    }
    if (!(closed == central)) throw Error("central point set is not a subgroup");
    return detail_make_regular_subgroup(g, std::move(gens), std::move(central), list.size());
  }
  std::vector<Perm> kept;
  for (const Perm& e : element_closure(g->degree(), g->generators(), kElementThreshold)) {
    bool ok = true;
    for (const Perm& s : g->generators())
      if (e.compose(s) != s.compose(e)) {
        ok = false;
        break;
      }
    if (ok && !e.is_identity()) kept.push_back(e);
  }
  return subgroup_generated(g, kept);
}

// ---------------------------------------------------------------------------
// Quotients and promotion

namespace {

// Standardize a raw closed action table: renumber rows in breadth-first
// column order starting from `root`. Returns the table and fills old->new.
CosetTable standardize_action(size_t ngens, size_t nrows, const std::vector<int32_t>& cells,
                              int32_t root, std::vector<Point>* relabel) {
  size_t width = 2 * ngens;
  std::vector<int32_t> pos(nrows, -1);
  std::vector<int32_t> order{root};
  pos[root] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    int32_t c = order[head];
    for (size_t col = 0; col < width; ++col) {
      int32_t d = cells[size_t(c) * width + col];
      if (pos[d] == -1) {
        pos[d] = int32_t(order.size());
        order.push_back(d);
      }
    }
  }
  if (order.size() != nrows) throw Error("action table is not transitive");
  CosetTable t;
  t.ngens = ngens;
  t.ncosets = nrows;
  t.cells.assign(nrows * width, -1);
  for (size_t r = 0; r < nrows; ++r)
    for (size_t col = 0; col < width; ++col)
      t.cells[r * width + col] = pos[cells[size_t(order[r]) * width + col]];
  if (relabel) {
    relabel->assign(nrows, 0);
    for (size_t r = 0; r < nrows; ++r) (*relabel)[r] = Point(pos[r]);
  }
  return t;
}

}  // namespace

PermGroupPtr PermGroup::regular_from_action(CosetTable t) {
  auto g = std::shared_ptr<PermGroup>(new PermGroup());
  g->init_regular(std::move(t), std::nullopt);
  return g;
}

Perm QuotientResult::map_perm(const Perm& g) const {
  if (block_of.empty()) throw DomainError("quotient element map requires a regular parent");
  size_t nblocks = group->degree();
  std::vector<Point> img(nblocks, Point(nblocks));
  for (Point p = 0; p < block_of.size(); ++p) {
    Point from = block_of[p];
    Point to = block_of[g[p]];
    if (img[from] == Point(nblocks))
      img[from] = to;
    else if (img[from] != to)
      throw Error("quotient blocks are not preserved; subgroup is not normal");
  }
  return Perm(std::move(img));
}

QuotientResult quotient(const PermGroupPtr& g, const Subgroup& n) {
  if (n.parent() != g) throw DomainError("quotient subgroup must live in the given group");
  if (!n.normal_in_parent()) throw DomainError("quotient subgroup is not normal");
  if (g->is_regular()) {
    // blocks = N-orbits; the block action is the regular action of G/N
    std::vector<Point> block(g->degree(), Point(g->degree()));
    std::vector<Point> stack;
    Point nblocks = 0;
    for (Point p = 0; p < g->degree(); ++p) {
      if (block[p] != Point(g->degree())) continue;
      Point id = nblocks++;
      block[p] = id;
      stack.assign(1, p);
      while (!stack.empty()) {
        Point x = stack.back();
        stack.pop_back();
        for (const Perm& q : n.generators()) {
          Point y = q[x];
          if (block[y] == Point(g->degree())) {
            block[y] = id;
            stack.push_back(y);
          }
        }
      }
    }
    size_t ngens = g->generators().size();
    size_t width = 2 * ngens;
    std::vector<int32_t> cells(size_t(nblocks) * width, -1);
    for (size_t i = 0; i < ngens; ++i) {
      const Perm& fwd = g->generators()[i];
      for (Point p = 0; p < g->degree(); ++p) {
        cells[size_t(block[p]) * width + 2 * i] = int32_t(block[fwd[p]]);
        cells[size_t(block[fwd[p]]) * width + 2 * i + 1] = int32_t(block[p]);
      }
    }
    std::vector<Point> relabel;
    CosetTable t = standardize_action(ngens, nblocks, cells, int32_t(block[0]), &relabel);
    QuotientResult out;
    out.group = PermGroup::regular_from_action(std::move(t));
    out.block_of.assign(g->degree(), 0);
    for (Point p = 0; p < g->degree(); ++p) out.block_of[p] = relabel[block[p]];
    if (out.group->order() * n.order() != g->order())
      throw Error("quotient order does not match index");
    return out;
  }
  // generic path: explicit right-coset action, element enumeration bounded
  if (n.order() > kElementThreshold)
    throw LimitError("quotient subgroup exceeds the element-enumeration threshold");
  std::vector<Perm> nelems = element_closure(g->degree(), n.generators(), kElementThreshold);
  auto canonical = [&nelems](const Perm& r) {
    Perm best = nelems[0].compose(r);
    for (size_t i = 1; i < nelems.size(); ++i) {
      Perm c = nelems[i].compose(r);
      if (c < best) best = c;
    }
    return best;
  };
  std::map<Perm, Point> index;
  std::vector<Perm> reps{Perm::identity(g->degree())};
  index[canonical(reps[0])] = 0;
  for (size_t head = 0; head < reps.size(); ++head) {
    for (const Perm& s : g->generators()) {
      Perm r = reps[head].compose(s);
      Perm key = canonical(r);
      if (!index.count(key)) {
        index[key] = Point(reps.size());
        reps.push_back(std::move(r));
      }
    }
  }
  size_t ncosets = reps.size();
  std::vector<Perm> action;
  for (const Perm& s : g->generators()) {
    std::vector<Point> img(ncosets);
    for (size_t c = 0; c < ncosets; ++c) img[c] = index.at(canonical(reps[c].compose(s)));
    action.push_back(Perm(std::move(img)));
  }
  QuotientResult out;
  out.group = PermGroup::from_generators(ncosets, std::move(action));
  if (out.group->order() * n.order() != g->order())
    throw Error("quotient order does not match index");
  return out;
}

PromotedSubgroup promote(const Subgroup& s) {
  const PermGroupPtr& g = s.parent();
  if (!g->is_regular()) throw DomainError("promotion requires a regular parent");
  std::vector<Point> pts = s.element_list();
  constexpr Point kNone = ~Point(0);
  std::vector<Point> label(g->degree(), kNone);
  for (size_t i = 0; i < pts.size(); ++i) label[pts[i]] = Point(i);
  size_t ngens = s.generators().size();
  size_t width = 2 * std::max<size_t>(ngens, 1);
  std::vector<int32_t> cells(pts.size() * width, -1);
  if (ngens == 0) {
    // trivial subgroup: single point, no generators; synthesize one identity column
    cells.assign(2, 0);
    CosetTable t;
    t.ngens = 1;
    t.ncosets = 1;
    t.cells = cells;
    PromotedSubgroup out;
    out.group = PermGroup::regular_from_action(std::move(t));
    out.new_label.assign(g->degree(), kNone);
    out.new_label[0] = 0;
    return out;
  }
  std::vector<Perm> invs;
  for (const Perm& q : s.generators()) invs.push_back(q.inverse());
  for (size_t r = 0; r < pts.size(); ++r)
    for (size_t i = 0; i < ngens; ++i) {
      cells[r * width + 2 * i] = int32_t(label[s.generators()[i][pts[r]]]);
      cells[r * width + 2 * i + 1] = int32_t(label[invs[i][pts[r]]]);
    }
  std::vector<Point> relabel;
  CosetTable t = standardize_action(ngens, pts.size(), cells, int32_t(label[0]), &relabel);
  PromotedSubgroup out;
  out.group = PermGroup::regular_from_action(std::move(t));
  out.new_label.assign(g->degree(), kNone);
  for (size_t i = 0; i < pts.size(); ++i) out.new_label[pts[i]] = relabel[i];
  return out;
}

Subgroup PromotedSubgroup::restrict(const Subgroup& inner) const {
  constexpr Point kNone = ~Point(0);
  std::vector<Perm> gens;
  for (const Perm& q : inner.generators()) {
    std::vector<Point> img(group->degree(), kNone);
    for (Point p = 0; p < new_label.size(); ++p) {
      if (new_label[p] == kNone) continue;
      Point qp = q[p];
      if (new_label[qp] == kNone)
        throw DomainError("inner subgroup does not lie inside the promoted subgroup");
      img[new_label[p]] = new_label[qp];
    }
    gens.push_back(Perm(std::move(img)));
  }
  return subgroup_generated(group, gens);
}

// ---------------------------------------------------------------------------
// Abelian invariants

InvariantFactors abelian_invariants(const PermGroupPtr& g) {
  QuotientResult q = quotient(g, derived_subgroup(g));
  const PermGroupPtr& Q = q.group;
  size_t m = Q->generators().size();
  // Schreier relations of the kernel of Z^m -> Q over a BFS spanning tree of
  // the Cayley graph of the abelian quotient.
  std::vector<std::vector<int64_t>> vecs;
  std::vector<int64_t> zero(m, 0);
  std::vector<int32_t> seen;
  std::vector<Point> order;
  std::vector<std::vector<int64_t>> rows;
  if (Q->is_regular()) {
    size_t nq = Q->degree();
    vecs.assign(nq, {});
    vecs[0] = zero;
    seen.assign(nq, 0);
    seen[0] = 1;
    order.push_back(0);
    for (size_t head = 0; head < order.size(); ++head) {
      Point p = order[head];
      for (size_t i = 0; i < m; ++i) {
        Point t = Q->generators()[i][p];
        std::vector<int64_t> v = vecs[p];
        v[i] += 1;
        if (!seen[t]) {
          seen[t] = 1;
          vecs[t] = std::move(v);
          order.push_back(t);
        } else {
          for (size_t k = 0; k < m; ++k) v[k] -= vecs[t][k];
          if (std::any_of(v.begin(), v.end(), [](int64_t x) { return x != 0; }))
            rows.push_back(std::move(v));
        }
      }
    }
  } else {
    std::vector<Perm> elems{Perm::identity(Q->degree())};
    std::map<Perm, size_t> idx{{elems[0], 0}};
    vecs.push_back(zero);
    for (size_t head = 0; head < elems.size(); ++head) {
      for (size_t i = 0; i < m; ++i) {
        Perm t = elems[head].compose(Q->generators()[i]);
        std::vector<int64_t> v = vecs[head];
        v[i] += 1;
        auto it = idx.find(t);
        if (it == idx.end()) {
          idx.emplace(t, elems.size());
          elems.push_back(std::move(t));
          vecs.push_back(std::move(v));
        } else {
          for (size_t k = 0; k < m; ++k) v[k] -= vecs[it->second][k];
          if (std::any_of(v.begin(), v.end(), [](int64_t x) { return x != 0; }))
            rows.push_back(std::move(v));
        }
      }
    }
  }
  IntMatrix rel(rows.size(), m);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < m; ++c) rel.at(r, c) = rows[r][c];
  return invariants_from_relations(m, rel);
}

// ---------------------------------------------------------------------------
// Homomorphisms

std::vector<Point> map_elements_regular(const PermGroup& source, const PermGroup& target,
                                        const std::vector<Point>& gen_image_points) {
  if (!source.is_regular() || !target.is_regular())
    throw DomainError("element mapping requires regular realizations");
  std::vector<Point> inv_pts(gen_image_points.size());
  for (size_t i = 0; i < gen_image_points.size(); ++i) inv_pts[i] = target.inv(gen_image_points[i]);
  // The standardized table numbers points in BFS order, so parents precede
  // children and one pass suffices.
  std::vector<Point> out(source.degree(), 0);
  for (Point p = 1; p < source.degree(); ++p) {
    auto [parent, col] = source.bfs_edge(p);
    size_t i = size_t(col / 2);
    Point step = (col % 2 == 0) ? gen_image_points[i] : inv_pts[i];
    out[p] = target.mul(out[Point(parent)], step);
  }
  return out;
}

HomImage homomorphism_image(const PermGroupPtr& source, const std::vector<Perm>& images,
                            const PermGroupPtr& target) {
  if (!source->is_regular()) throw DomainError("homomorphism source must be a regular realization");
  const auto& pres = source->presentation();
  if (!pres) throw DomainError("homomorphism source lacks a defining presentation");
  if (images.size() != pres->ngens())
    throw DomainError("one image per source generator required");
  for (const Perm& p : images)
    if (p.degree() != target->degree()) throw DomainError("image acts on the wrong domain");
  auto eval_images = [&](const Word& w) {
    Perm acc = Perm::identity(target->degree());
    for (Letter l : w.letters()) {
      const Perm& gp = images[size_t(letter_gen(l))];
      acc = acc.compose(letter_inverted(l) ? gp.inverse() : gp);
    }
    return acc;
  };
  for (const Word& r : pres->relators)
    if (!eval_images(r).is_identity())
      throw DomainError("assignment does not respect relator " + r.str(pres->generators));

  HomImage out;
  out.images = images;
  out.image = subgroup_generated(target, images);

  // kernel by exhaustive evaluation of canonical words over the BFS tree
  std::vector<Point> kernel_pts;
  if (target->is_regular()) {
    std::vector<Point> img_pts(images.size());
    for (size_t i = 0; i < images.size(); ++i) img_pts[i] = images[i][0];
    std::vector<Point> el = map_elements_regular(*source, *target, img_pts);
    for (Point p = 0; p < el.size(); ++p)
      if (el[p] == 0) kernel_pts.push_back(p);
  } else {
    // evaluate as permutations; domains here are small
    std::vector<Perm> el(source->degree(), Perm::identity(target->degree()));
    for (Point p = 1; p < source->degree(); ++p) el[p] = eval_images(source->element_word(p));
    for (Point p = 0; p < source->degree(); ++p)
      if (el[p].is_identity()) kernel_pts.push_back(p);
  }
  PointSet kset(source->degree());
  for (Point p : kernel_pts) kset.set(p);
  std::vector<Perm> kgens;
  PointSet closed(source->degree());
  closed.set(0);
  std::vector<Point> list{0};
  for (Point p : kernel_pts) {
    if (closed.test(p)) continue;
    kgens.push_back(source->eval_perm(source->element_word(p)));
    extend_orbit(closed, list, kgens, 0);
  }
  if (!(closed == kset)) throw Error("kernel point set is not a subgroup");
  out.kernel =
      detail_make_regular_subgroup(source, std::move(kgens), std::move(kset), kernel_pts.size());

  if (out.image.order() * out.kernel.order() != source->order())
    throw Error("homomorphism order equation |G| = |image| * |kernel| failed");
  return out;
}

}  // namespace chinu
