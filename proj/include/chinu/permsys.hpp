#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chinu/enumerator.hpp"
#include "chinu/words.hpp"
#include "chinu/zlin.hpp"

namespace chinu {

using Point = uint32_t;

/// Bijection of {0, ..., n-1}.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);
  static Perm identity(size_t n);

  size_t degree() const { return img_.size(); }
  Point operator[](Point p) const { return img_[p]; }
  bool is_identity() const;

  /// Apply *this first, then `then` (right action, matching word order).
  Perm compose(const Perm& then) const;
  Perm inverse() const;
  Perm conjugated_by(const Perm& t) const;  // t^-1 * this * t

  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& rhs) const { return img_ < rhs.img_; }

  std::string cycles() const;  // "(1 2)(3 4 5)" 1-based, "()" for identity

 private:
  std::vector<Point> img_;
};

/// Sorted point set over a fixed domain, used as the element set of a
/// subgroup of a regular group (element <-> point bijection).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(size_t domain) : bits_((domain + 63) / 64) {}
  bool test(Point p) const { return (bits_[p >> 6] >> (p & 63)) & 1; }
  void set(Point p) { bits_[p >> 6] |= uint64_t(1) << (p & 63); }
  size_t count() const;
  PointSet intersect(const PointSet& rhs) const;
  bool operator==(const PointSet&) const = default;

 private:
  std::vector<uint64_t> bits_;
};

class PermGroup;
using PermGroupPtr = std::shared_ptr<const PermGroup>;

/// Subgroup of a PermGroup, carrying its own membership certificate:
/// inside a regular parent the element point set (semiregular action makes
/// membership a point lookup), otherwise a stabilizer chain.
class Subgroup {
 public:
  const PermGroupPtr& parent() const { return parent_; }
  const std::vector<Perm>& generators() const { return gens_; }
  uint64_t order() const { return order_; }
  bool trivial() const { return order_ == 1; }
  bool contains(const Perm& g) const;

  /// Regular-parent only: the subgroup's element set / sorted element list.
  const PointSet& elements() const { return elems_; }
  std::vector<Point> element_list() const;
  bool contains_point(Point e) const;

  bool same_subgroup(const Subgroup& rhs) const;
  bool contained_in(const Subgroup& rhs) const;
  bool normal_in_parent() const;
  bool psi_stable(const std::vector<Perm>& auto_images) const;  // closed under a given automorphism

 private:
  friend class PermGroup;
  friend Subgroup subgroup_generated(const PermGroupPtr&, std::vector<Perm>);
  friend Subgroup detail_make_regular_subgroup(const PermGroupPtr&, std::vector<Perm>, PointSet,
                                               uint64_t);

  PermGroupPtr parent_;
  std::vector<Perm> gens_;
  uint64_t order_ = 1;
  PointSet elems_;                     // regular path
  std::shared_ptr<const void> chain_;  // generic path (StabChain)
};

/// Internal: assembles a subgroup of a regular parent from already-verified
/// data (element point set, generators, order).
Subgroup detail_make_regular_subgroup(const PermGroupPtr& parent, std::vector<Perm> gens,
                                      PointSet elems, uint64_t order);

/// Permutation group handle. Two construction routes:
///  - from_generators: deterministic Schreier-Sims chain (any generators);
///  - regular realizations: a validated coset table over the trivial
///    subgroup (or a block/promotion construction) giving the regular
///    action, where group elements are identified with domain points and
///    canonical words come from the standardized table.
class PermGroup : public std::enable_shared_from_this<PermGroup> {
 public:
  /// Schreier-Sims over explicit generators (spec: build_chain).
  static PermGroupPtr from_generators(size_t domain, std::vector<Perm> gens);

  /// Regular action of the enumerated group; `t` must come from an
  /// enumeration with empty subgroup. Retains the presentation.
  static PermGroupPtr regular_from_table(CosetTable t, Presentation p);

  /// Regular handle over an already-standardized action table without a
  /// presentation (promotion and quotient constructions).
  static PermGroupPtr regular_from_action(CosetTable t);

  size_t degree() const;
  uint64_t order() const;
  const std::vector<Perm>& generators() const { return gens_; }
  bool is_regular() const { return regular_.has_value(); }
  const std::optional<Presentation>& presentation() const;
  bool contains(const Perm& g) const;
  bool is_abelian() const;

  // ---- regular-only element calculus (element == point, identity == 0) ----
  Word element_word(Point e) const;  // breadth-first shortlex canonical word
  Point mul(Point a, Point b) const;
  Point inv(Point a) const;
  Point conj(Point a, Point b) const { return mul(mul(inv(b), a), b); }
  Point comm(Point a, Point b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Point eval_point(Point start, const Word& w) const;
  Perm eval_perm(const Word& w) const;
  Perm generator_perm(size_t i) const;  // column i as a permutation
  uint64_t element_order(Point e) const;
  /// BFS tree edge of a point: (parent point, table column); (-1, -1) at 0.
  std::pair<int32_t, int32_t> bfs_edge(Point e) const;

  Subgroup whole_group() const;
  Subgroup trivial_subgroup() const;

 private:
  friend Subgroup subgroup_generated(const PermGroupPtr&, std::vector<Perm>);
  friend Subgroup normal_closure(const PermGroupPtr&, const std::vector<Perm>&);

  struct Regular {
    CosetTable table;
    std::optional<Presentation> pres;
    std::vector<int32_t> bfs_parent;  // -1 at 0
    std::vector<int32_t> bfs_col;
  };
  PermGroup() = default;
  void init_regular(CosetTable t, std::optional<Presentation> p);

  std::vector<Perm> gens_;
  size_t degree_ = 0;
  uint64_t order_ = 1;
  std::optional<Regular> regular_;
  std::shared_ptr<const void> chain_;  // StabChain for generic handles
};

// ---- subgroup constructions ----

Subgroup subgroup_generated(const PermGroupPtr& g, std::vector<Perm> seeds);
Subgroup normal_closure(const PermGroupPtr& g, const std::vector<Perm>& seeds);
Subgroup join(const Subgroup& a, const Subgroup& b);
/// [A, B] as the normal closure of the generator commutators in <A, B>.
Subgroup commutator_subgroup(const PermGroupPtr& g, const Subgroup& a, const Subgroup& b);
Subgroup derived_subgroup(const PermGroupPtr& g);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
std::vector<Subgroup> lower_central_series(const PermGroupPtr& g);
Subgroup center(const PermGroupPtr& g);

/// Elements of a small group/subgroup as explicit permutations (breadth-first
/// closure; bounded by the element-enumeration threshold).
std::vector<Perm> element_closure(size_t domain, const std::vector<Perm>& gens, size_t cap);

inline constexpr size_t kElementThreshold = 200'000;

/// G/N as a permutation group together with the projection data. For regular
/// G the blocks are the N-orbits and the quotient is again regular (with
/// canonical standardized numbering); for generic G an explicit right-coset
/// action is built (element enumeration bounded by the threshold).
struct QuotientResult {
  PermGroupPtr group;
  std::vector<Point> block_of;  // parent point -> quotient point
  Perm map_perm(const Perm& g) const;
};
QuotientResult quotient(const PermGroupPtr& g, const Subgroup& n);

/// Relabels a subgroup of a regular group as a regular group in its own
/// right (the subgroup's right-regular action on its own elements).
struct PromotedSubgroup {
  PermGroupPtr group;
  std::vector<Point> new_label;  // parent domain -> promoted point (or npos)
  Subgroup restrict(const Subgroup& inner) const;  // inner must lie inside
};
PromotedSubgroup promote(const Subgroup& s);

/// Invariant factors of G/[G,G]: relation rows are harvested from the
/// multiplication of the abelian quotient (Schreier generators of the kernel
/// of Z^gens -> Q over the BFS tree), then reduced by Smith normal form.
InvariantFactors abelian_invariants(const PermGroupPtr& g);

/// Homomorphism given by generator images; source must be regular (the
/// toolkit always retains regular realizations). Validates that every
/// relator of the source presentation maps to the identity, computes the
/// image subgroup in the target and the kernel in the source by evaluating
/// the canonical word of every source element.
struct HomImage {
  std::vector<Perm> images;
  Subgroup image;   // subgroup of target
  Subgroup kernel;  // subgroup of source
};
HomImage homomorphism_image(const PermGroupPtr& source, const std::vector<Perm>& images,
                            const PermGroupPtr& target);

/// Image points of all source elements under generator images that land in a
/// regular target (dynamic programming over the BFS tree).
std::vector<Point> map_elements_regular(const PermGroup& source, const PermGroup& target,
                                        const std::vector<Point>& gen_image_points);

}  // namespace chinu
