#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chinu/enumerator.hpp"
#include "chinu/permsys.hpp"
#include "oracles.hpp"

using namespace chinu;
using oracles::cycle;

namespace {

PermGroupPtr regular(const std::string& text) {
  Presentation p = parse_presentation(text);
  return PermGroup::regular_from_table(enumerate(p, {}), p);
}

}  // namespace

TEST_CASE("chain construction and orders") {
  CHECK(PermGroup::from_generators(3, {cycle(3, {0, 1})})->order() == 2);
  CHECK(PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})})->order() == 6);
  CHECK(PermGroup::from_generators(5, {})->order() == 1);
  CHECK(PermGroup::from_generators(8, oracles::q8_model())->order() == 8);
  CHECK(PermGroup::from_generators(27, oracles::heisenberg_model(3))->order() == 27);
  CHECK_THROWS_AS(PermGroup::from_generators(3, {cycle(4, {0, 1})}), DomainError);
  CHECK_THROWS_AS(Perm({0, 0, 1}), DomainError);
}

TEST_CASE("chain order equals exhaustive count on the small corpus") {
  std::vector<std::vector<Perm>> corpus{
      {cycle(3, {0, 1}), cycle(3, {0, 1, 2})},
      oracles::q8_model(),
      oracles::heisenberg_model(2),
      oracles::heisenberg_model(3),
      oracles::hand_model("d4"),
      oracles::hand_model("c3:c4"),
      oracles::direct_model({oracles::hand_model("s3"), {cycle(4, {0, 1, 2, 3})}}),
  };
  for (const auto& gens : corpus) {
    auto g = PermGroup::from_generators(gens[0].degree(), gens);
    CHECK(g->order() == oracles::word_closure_order(gens));
    CHECK(g->order() <= 200);
  }
}

TEST_CASE("membership") {
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  CHECK(s3->contains(Perm::identity(3)));
  CHECK(s3->contains(cycle(3, {0, 2, 1})));
  auto c2 = PermGroup::from_generators(3, {cycle(3, {0, 1})});
  CHECK(!c2->contains(cycle(3, {0, 2})));
  CHECK_THROWS_AS(c2->contains(Perm::identity(4)), DomainError);
}

TEST_CASE("normal closure") {
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  CHECK(normal_closure(s3, {Perm::identity(3)}).order() == 1);
  CHECK(normal_closure(s3, {cycle(3, {0, 1, 2})}).order() == 3);
  // conjugates of a transposition generate all of S3
  CHECK(normal_closure(s3, {cycle(3, {0, 1})}).order() == 6);
  // a seed outside the parent is rejected
  auto c2 = PermGroup::from_generators(3, {cycle(3, {0, 1})});
  CHECK_THROWS_AS(normal_closure(c2, {cycle(3, {0, 2})}), DomainError);
}

TEST_CASE("normal closure conjugation invariance") {
  auto g = regular("generators: a b\nrelators: a^4 b^2 (ab)^2");
  Subgroup n = normal_closure(g, {g->generator_perm(0)});
  for (const Perm& c : g->generators())
    for (const Perm& s : n.generators()) CHECK(n.contains(s.conjugated_by(c)));
}

TEST_CASE("commutator subgroups") {
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  Subgroup whole = s3->whole_group();
  Subgroup triv = s3->trivial_subgroup();
  CHECK(commutator_subgroup(s3, whole, triv).order() == 1);
  CHECK(commutator_subgroup(s3, whole, whole).order() == 3);

  auto q8 = regular("generators: a b\nrelators: a^4 a^2b^-2 b^-1aba");
  CHECK(q8->order() == 8);
  Subgroup derived = derived_subgroup(q8);
  CHECK(derived.order() == 2);
  CHECK(derived.same_subgroup(center(q8)));
}

TEST_CASE("exhaustive commutator table of Q8 agrees") {
  auto q8 = regular("generators: a b\nrelators: a^4 a^2b^-2 b^-1aba");
  std::set<Point> comms;
  for (Point x = 0; x < 8; ++x)
    for (Point y = 0; y < 8; ++y) comms.insert(q8->comm(x, y));
  Subgroup derived = derived_subgroup(q8);
  CHECK(comms.size() == 2);
  for (Point p : comms) CHECK(derived.contains_point(p));
}

TEST_CASE("intersection") {
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  Subgroup a3 = normal_closure(s3, {cycle(3, {0, 1, 2})});
  Subgroup flip = subgroup_generated(s3, {cycle(3, {0, 1})});
  CHECK(intersection(a3, a3).same_subgroup(a3));
  CHECK(intersection(a3, s3->trivial_subgroup()).order() == 1);
  CHECK(intersection(a3, flip).order() == 1);

  auto c6 = regular("generators: a\nrelators: a^6");
  Subgroup c2 = subgroup_generated(c6, {c6->eval_perm(Word::letter(1, 0).pow(3))});
  Subgroup c3 = subgroup_generated(c6, {c6->eval_perm(Word::letter(1, 0).pow(2))});
  CHECK(intersection(c2, c3).order() == 1);
  CHECK(intersection(c2, c6->whole_group()).same_subgroup(c2));
}

TEST_CASE("quotients") {
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  Subgroup a3 = normal_closure(s3, {cycle(3, {0, 1, 2})});
  CHECK(quotient(s3, a3).group->order() == 2);
  CHECK(quotient(s3, s3->trivial_subgroup()).group->order() == 6);
  CHECK(quotient(s3, s3->whole_group()).group->order() == 1);
  CHECK_THROWS_AS(quotient(s3, subgroup_generated(s3, {cycle(3, {0, 1})})), DomainError);

  auto q8 = regular("generators: a b\nrelators: a^4 a^2b^-2 b^-1aba");
  QuotientResult q = quotient(q8, derived_subgroup(q8));
  CHECK(q.group->order() == 4);
  CHECK(abelian_invariants(q.group) == InvariantFactors{{2, 2}, 0});
  // the quotient map respects generator images
  for (const Perm& g : q8->generators()) CHECK(q.map_perm(g).degree() == 4);
}

TEST_CASE("lower central series") {
  auto c6 = regular("generators: a\nrelators: a^6");
  auto lcs = lower_central_series(c6);
  REQUIRE(lcs.size() >= 2);
  CHECK(lcs[0].order() == 6);
  CHECK(lcs[1].order() == 1);

  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  auto l2 = lower_central_series(s3);
  REQUIRE(l2.size() == 3);
  CHECK(l2[1].order() == 3);
  CHECK(l2[2].same_subgroup(l2[1]));  // plateau at A3

  auto q8 = regular("generators: a b\nrelators: a^4 a^2b^-2 b^-1aba");
  auto l3 = lower_central_series(q8);
  CHECK(l3[1].order() == 2);
  CHECK(l3.back().order() == 1);
  for (size_t i = 0; i + 1 < l3.size(); ++i) {
    CHECK(l3[i + 1].contained_in(l3[i]));
    CHECK(l3[i].normal_in_parent());
  }
}

TEST_CASE("center") {
  auto ab = regular("generators: a b\nrelators: a^2 b^3 [a,b]");
  CHECK(center(ab).order() == 6);
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  CHECK(center(s3).order() == 1);
  auto q8 = regular("generators: a b\nrelators: a^4 a^2b^-2 b^-1aba");
  CHECK(center(q8).order() == 2);
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(regular("generators: a\nrelators: a^6")) ==
        InvariantFactors{{6}, 0});
  auto s3 = PermGroup::from_generators(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
  CHECK(abelian_invariants(s3) == InvariantFactors{{2}, 0});
  CHECK(abelian_invariants(regular("generators: a b\nrelators: a^2 b^2 [a,b]")) ==
        InvariantFactors{{2, 2}, 0});
}

TEST_CASE("regular realization element calculus") {
  auto s3 = regular("generators: a b\nrelators: a^2 b^3 (ab)^2");
  CHECK(s3->order() == 6);
  CHECK(s3->is_regular());
  // canonical words are breadth-first shortlex and multiply correctly
  for (Point x = 0; x < 6; ++x) {
    CHECK(s3->eval_point(0, s3->element_word(x)) == x);
    for (Point y = 0; y < 6; ++y) {
      Point xy = s3->mul(x, y);
      Word w = s3->element_word(x) * s3->element_word(y);
      CHECK(s3->eval_point(0, w) == xy);
    }
    CHECK(s3->mul(x, s3->inv(x)) == 0);
  }
  // element orders divide the group order
  for (Point x = 0; x < 6; ++x) CHECK(6 % s3->element_order(x) == 0);
}

TEST_CASE("promotion of a subgroup to a regular group") {
  auto q8 = regular("generators: a b\nrelators: a^4 a^2b^-2 b^-1aba");
  Subgroup cyc4 = subgroup_generated(q8, {q8->generator_perm(0)});
  CHECK(cyc4.order() == 4);
  PromotedSubgroup pr = promote(cyc4);
  CHECK(pr.group->order() == 4);
  CHECK(pr.group->is_regular());
  CHECK(abelian_invariants(pr.group) == InvariantFactors{{4}, 0});
}

TEST_CASE("homomorphisms: images and kernels") {
  auto c6 = regular("generators: a\nrelators: a^6");

  // identity map: trivial kernel
  HomImage id = homomorphism_image(c6, {c6->generator_perm(0)}, c6);
  CHECK(id.kernel.order() == 1);
  CHECK(id.image.order() == 6);

  // map to the trivial group: kernel is everything
  auto triv = regular("generators: a\nrelators: a");
  HomImage tv = homomorphism_image(c6, {Perm::identity(1)}, triv);
  CHECK(tv.kernel.order() == 6);

  // C6 -> C3 by a -> generator
  auto c3 = regular("generators: a\nrelators: a^3");
  HomImage h = homomorphism_image(c6, {c3->generator_perm(0)}, c3);
  CHECK(h.image.order() == 3);
  CHECK(h.kernel.order() == 2);

  // an assignment violating relators is rejected with the relator named
  auto c4 = regular("generators: a\nrelators: a^4");
  CHECK_THROWS_WITH_AS(homomorphism_image(c6, {c4->generator_perm(0)}, c4),
                       doctest::Contains("a^6"), DomainError);
}

TEST_CASE("element closure threshold") {
  CHECK(element_closure(3, {cycle(3, {0, 1, 2})}, 10).size() == 3);
  CHECK_THROWS_AS(element_closure(6, {cycle(6, {0, 1, 2, 3, 4, 5})}, 3), LimitError);
}
