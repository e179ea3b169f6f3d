#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chinu/words.hpp"

using namespace chinu;

namespace {

Word w(size_t ngens, std::initializer_list<Letter> ls) {
  return Word::reduced(ngens, std::vector<Letter>(ls));
}

Word random_word(std::mt19937_64& rng, size_t ngens, size_t maxlen) {
  std::uniform_int_distribution<size_t> len(0, maxlen);
  std::uniform_int_distribution<int32_t> gen(0, int32_t(ngens) - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> ls;
  size_t n = len(rng);
  for (size_t i = 0; i < n; ++i) {
    int32_t g = gen(rng) + 1;
    ls.push_back(sign(rng) ? g : -g);
  }
  return Word::reduced(ngens, ls);
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(w(2, {1, -1}).empty());                 // a a^-1
  CHECK(w(2, {1, 2, -2, 1}) == w(2, {1, 1}));   // a b b^-1 a -> a a
  CHECK(w(2, {1, -2, 2, -1}).empty());          // a b^-1 b a^-1
  CHECK(w(2, {1, 2}).size() == 2);
  CHECK_THROWS_AS(w(1, {2}), DomainError);
  CHECK_THROWS_AS(w(1, {0}), DomainError);
}

TEST_CASE("commutator and conjugate basics") {
  Word a = Word::letter(2, 0), b = Word::letter(2, 1), e = Word(2);
  CHECK(commutator(a, a).empty());
  CHECK(commutator(a, e).empty());
  CHECK(commutator(a, b) == w(2, {-1, -2, 1, 2}));
  CHECK(conjugate(a, e) == a);
  CHECK(conjugate(a, a) == a);
  CHECK(conjugate(a, b) == w(2, {-2, 1, 2}));
  CHECK_THROWS_AS(commutator(a, Word::letter(3, 0)), DomainError);
  CHECK_THROWS_AS(conjugate(a, Word::letter(3, 0)), DomainError);
}

TEST_CASE("word properties over random samples") {
  std::mt19937_64 rng(20240811);
  for (int it = 0; it < 300; ++it) {
    size_t ngens = 1 + (it % 4);
    Word u = random_word(rng, ngens, 12);
    Word v = random_word(rng, ngens, 12);
    Word t = random_word(rng, ngens, 12);
    // reduce is idempotent by construction: rebuilding from letters is a no-op
    CHECK(Word::reduced(ngens, u.letters()) == u);
    CHECK((u * u.inverse()).empty());
    // [u,v] = u^-1 * u^v
    CHECK(commutator(u, v) == u.inverse() * conjugate(u, v));
    // (u^t)^(t^-1) = u
    CHECK(conjugate(conjugate(u, t), t.inverse()) == u);
    CHECK(u.pow(3) == u * u * u);
    CHECK(u.pow(-2) == (u * u).inverse());
  }
}

TEST_CASE("shortlex order") {
  Word a = Word::letter(2, 0), A = Word::letter(2, 0, true), b = Word::letter(2, 1);
  CHECK(Word::shortlex_less(a, A));
  CHECK(Word::shortlex_less(A, b));
  CHECK(Word::shortlex_less(b, a * a));
  CHECK(!Word::shortlex_less(a, a));
}

TEST_CASE("parse smallest inputs") {
  Presentation c2 = parse_presentation("generators: a\nrelators: a^2");
  CHECK(c2.ngens() == 1);
  CHECK(c2.relators.size() == 1);
  CHECK(c2.relators[0] == w(1, {1, 1}));

  Presentation v4 = parse_presentation("generators: a b\nrelators: a^2 b^2 [a,b]");
  CHECK(v4.ngens() == 2);
  CHECK(v4.relators.size() == 3);
  CHECK(v4.relators[2] == w(2, {-1, -2, 1, 2}));

  Presentation f1 = parse_presentation("generators: a\nrelators:");
  CHECK(f1.ngens() == 1);
  CHECK(f1.relators.empty());

  Presentation f2 = parse_presentation("generators: a\n");  // no relators line at all
  CHECK(f2.relators.empty());
}

TEST_CASE("parse atoms, exponents, comments, multiline") {
  Presentation p = parse_presentation(
      "# dihedral of order 8\n"
      "generators: a b   # two generators\n"
      "relators: a^4 b^2\n"
      "  (ab)^2\n");
  CHECK(p.relators.size() == 3);
  CHECK(p.relators[2] == w(2, {1, 2, 1, 2}));

  Presentation q = parse_presentation("generators: a b\nrelators: b^-1aba");
  CHECK(q.relators[0] == w(2, {-2, 1, 2, 1}));

  Presentation nested = parse_presentation("generators: a b\nrelators: [a,[a,b]]^2");
  CHECK(nested.relators.size() == 1);

  // longest-match tokenization with multi-character names
  Presentation mc = parse_presentation("generators: x1 x2\nrelators: x1x2x1^-1x2^-1");
  CHECK(mc.relators[0] == w(2, {1, 2, -1, -2}));
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_presentation("relators: a"), ParseError);
  try {
    parse_presentation("generators: a\nrelators: a c");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col >= 13);
  }
  CHECK_THROWS_AS(parse_presentation("generators:\nrelators:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("generators: a a\nrelators:"), DomainError);
  CHECK_THROWS_AS(parse_presentation("generators: a\nrelators: [a,a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("generators: a\nrelators: a^"), ParseError);
}

TEST_CASE("serialize round-trips") {
  std::mt19937_64 rng(987654);
  std::vector<std::string> name_pool{"a", "b", "c", "x1", "x2", "gg"};
  for (int it = 0; it < 200; ++it) {
    size_t ngens = 1 + (it % 5);
    Presentation p;
    for (size_t i = 0; i < ngens; ++i) p.generators.push_back(name_pool[i]);
    size_t nrel = it % 6;
    for (size_t r = 0; r < nrel; ++r) {
      Word x = random_word(rng, ngens, 10);
      if (!x.empty()) p.relators.push_back(x);
    }
    Presentation q = parse_presentation(p.str());
    CHECK(q.generators == p.generators);
    REQUIRE(q.relators.size() == p.relators.size());
    for (size_t i = 0; i < p.relators.size(); ++i) CHECK(q.relators[i] == p.relators[i]);
  }
}
