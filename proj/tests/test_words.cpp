#include <doctest.h>

#include <random>

#include "mrep/errors.hpp"
#include "mrep/random.hpp"
#include "mrep/words.hpp"
#include "support.hpp"

using namespace mrep;

TEST_CASE("parse and format round trip") {
  const Alphabet al = oracle::free2();
  CHECK(al.format(al.parse("abA")) == "abA");
  CHECK(al.parse("e").empty());
  CHECK(al.format(Word()) == "e");
  CHECK(al.parse("aA").empty());
  CHECK(al.parse("a.b A") == al.parse("abA"));
  CHECK_THROWS_AS(al.parse("c"), InputError);

  const Alphabet g = oracle::greek2();
  CHECK(g.format(g.parse("alphaBETA")) == "alpha.BETA");
  CHECK(g.parse("ALPHA.ALPHA").size() == 2);
}

TEST_CASE("group laws on random words") {
  const Alphabet al = oracle::free2();
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const Word x = random_word(rng, al, static_cast<int>(rng() % 6));
    const Word y = random_word(rng, al, static_cast<int>(rng() % 6));
    const Word z = random_word(rng, al, static_cast<int>(rng() % 6));
    CHECK(al.is_reduced(x));
    CHECK(al.multiply(al.multiply(x, y), z) == al.multiply(x, al.multiply(y, z)));
    CHECK(al.multiply(x, al.inverse(x)).empty());
    CHECK(al.distance(x, y) == static_cast<int>(al.multiply(al.inverse(x), y).size()));
    const auto geo = al.geodesic(x, y);
    CHECK(static_cast<int>(geo.size()) == al.distance(x, y) + 1);
    CHECK(geo.front() == x);
    CHECK(geo.back() == y);
  }
}

TEST_CASE("shortlex order") {
  const Alphabet al = oracle::free2();
  CHECK(al.parse("b") < al.parse("aa"));
  CHECK(al.parse("a") < al.parse("b"));
  CHECK(al.parse("ab") < al.parse("aB"));
}

TEST_CASE("sphere sizes and neighbours") {
  const Alphabet al = oracle::free2();
  CHECK(sphere_size(al, 0) == 1);
  CHECK(sphere_size(al, 1) == 4);
  CHECK(sphere_size(al, 3) == 36);
  CHECK(al.sphere(3).size() == 36);
  CHECK(al.ball_words(Word(), 2).size() == 17);
  CHECK(al.neighbours(al.parse("ab")).size() == 4);
  CHECK(al.children(al.parse("ab")).size() == 3);
  CHECK(al.children(Word()).size() == 4);
}

TEST_CASE("cone translation") {
  const Alphabet al = oracle::free2();
  // a C(b) = C(ab); a C(A b) is not a cone of the form C(a y).
  CHECK(al.translate_cone(al.parse("a"), al.parse("b")) == al.parse("ab"));
  CHECK_FALSE(al.translate_cone(al.parse("a"), al.parse("A")).has_value());
  CHECK(Alphabet::cone_contains(al.parse("ab"), al.parse("abBA")) == false);
  CHECK(Alphabet::cone_contains(al.parse("ab"), al.parse("aba")));
}

TEST_CASE("complete subtrees") {
  const Alphabet al = oracle::free2();
  const FiniteSubtree ball = al.ball(Word(), 2);
  CHECK(ball.is_complete());
  CHECK(ball.terminals().size() == 12);
  CHECK(ball.interior().size() == 5);

  std::vector<Word> partial{Word(), al.parse("a"), al.parse("b")};
  CHECK_FALSE(FiniteSubtree(al, partial).is_complete());
  CHECK_THROWS_AS(complete_subtree_of(al, partial), ValidationError);

  // Based at x = ab: the nearest vertex a is the extra terminal.
  const Word x = al.parse("ab");
  std::vector<Word> based{al.parse("a"), x};
  for (const Word& c : al.children(x)) based.push_back(c);
  const FiniteSubtree t(al, based);
  CHECK(t.is_complete());
  CHECK(t.based_root().nearest == al.parse("a"));
  CHECK(t.based_root().root == x);
  CHECK(t.based_terminals().size() == 3);

  CHECK_THROWS_AS(FiniteSubtree(al, {al.parse("a"), al.parse("b")}), ValidationError);
}

TEST_CASE("random lopsided subtrees stay complete") {
  const Alphabet al = oracle::free2();
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    const FiniteSubtree t = oracle::random_complete_subtree(rng, al, 2, 5, 10);
    CHECK(t.is_complete());
    // A complete subtree of a (q+1)-regular tree with i interior vertices has
    // (q - 1) i + 2 terminals.
    const auto n_int = static_cast<long>(t.interior().size());
    CHECK(static_cast<long>(t.terminals().size()) == (al.branching() - 1) * n_int + 2);
  }
}
