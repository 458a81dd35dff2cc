#include <doctest.h>

#include <cmath>
#include <set>

#include "mrep/errors.hpp"
#include "mrep/random.hpp"
#include "mrep/transport.hpp"
#include "support.hpp"

using namespace mrep;

namespace {

FundamentalSubtree index2() {
  const Alphabet al = oracle::free2();
  return FundamentalSubtree(CosetAutomaton::from_generators(al, {al.parse("b"), al.parse("abA"), al.parse("aa")}));
}

FundamentalSubtree index3() {
  const Alphabet al = oracle::free2();
  return FundamentalSubtree(
      CosetAutomaton::from_permutations(al, {{al.letter("a"), {1, 2, 0}}, {al.letter("b"), {0, 2, 1}}}));
}

FundamentalSubtree index1() {
  const Alphabet al = oracle::free2();
  return FundamentalSubtree(CosetAutomaton::from_generators(al, {al.parse("a"), al.parse("b")}));
}

InducedFamily random_family(Rng& rng, const std::shared_ptr<const MatrixSystem>& sys, std::size_t n, int depth) {
  InducedFamily fam;
  for (std::size_t i = 0; i < n; ++i) fam.push_back(random_function(rng, sys, 1 + static_cast<int>(i) % depth));
  return fam;
}

}  // namespace

TEST_CASE("restriction of the spherical system") {
  const FundamentalSubtree fs = index2();
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  const MatrixSystem sph = spherical_system(al, 0.0);
  const MatrixSystem r = restrict_system(sph, fs);
  CHECK(r.dims() == std::vector<int>(6, 1));
  CHECK(compatibility_defect(r) <= 1e-12);
  for (Letter ap = 0; ap < sub.size(); ++ap) {
    CHECK(r.B(ap)(0, 0).real() == doctest::Approx(0.25));
    for (Letter bp = 0; bp < sub.size(); ++bp) {
      if (sub.inverse(ap) == bp) continue;
      // Geodesic from x(a') to a' x(b') has d edges: H = 3^{-d/2}.
      const Word from = fs.generator(ap).x;
      const Word to = al.multiply(fs.generator(ap).gamma, fs.generator(bp).x);
      const int d = al.distance(from, to);
      CHECK(std::abs(r.H(bp, ap)(0, 0) - std::pow(3.0, -0.5 * d)) <= 1e-14);
    }
  }
}

TEST_CASE("restriction to the whole group is the identity") {
  const FundamentalSubtree fs = index1();
  Rng rng(3);
  const MatrixSystem s = random_compatible_system(rng, fs.alphabet(), {2, 1, 3, 1});
  const MatrixSystem r = restrict_system(s, fs);
  // A' may order the letters differently; match them by name.
  const auto sub = [&](Letter a) { return fs.subgroup_alphabet().letter(fs.alphabet().name(a)); };
  for (Letter a = 0; a < 4; ++a) {
    CHECK(oracle::max_abs_diff(r.B(sub(a)), s.B(a)) == 0.0);
    for (Letter b = 0; b < 4; ++b) CHECK(oracle::max_abs_diff(r.H(sub(b), sub(a)), s.H(b, a)) <= 1e-15);
  }
}

TEST_CASE("restricted functions") {
  for (const FundamentalSubtree& fs : {index2(), index3()}) {
    const Alphabet& al = fs.alphabet();
    const Alphabet& sub = fs.subgroup_alphabet();
    Rng rng(5);
    const auto sys = std::make_shared<const MatrixSystem>(random_compatible_system(rng, al, {2, 1, 1, 2}));
    const auto res = std::make_shared<const MatrixSystem>(restrict_system(*sys, fs));
    CHECK(compatibility_defect(*res) <= 1e-8);
    for (Letter ap = 0; ap < res->letters(); ++ap) CHECK(res->dim(ap) == sys->dim(fs.generator(ap).q));

    for (int k = 0; k < 5; ++k) {
      const MultFunc f = random_function(rng, sys, 1 + k % 3);
      const MultFunc uf = restrict_function(res, fs, f);
      CHECK(std::abs(norm2(uf) - norm2(f)) <= 1e-8 * norm2(f));
      // (Uf)(y' a') = f(y' x(a')) beyond the depth.
      for (const Word& y : sub.sphere(uf.depth() + 1)) {
        const Word at = al.multiply(fs.expand(sub.drop_last(y)), fs.generator(y.back()).x);
        CHECK((evaluate(uf, y) - evaluate(f, at)).norm() <= 1e-12);
      }
      // Equivariance for x' in the subgroup.
      for (Letter c = 0; c < sub.size(); c += 2) {
        const Word xp = sub.word({c});
        const MultFunc lhs = restrict_function(res, fs, act(fs.expand(xp), f));
        const MultFunc rhs = act(xp, uf);
        const int d = std::max(lhs.depth(), rhs.depth()) + 1;
        CHECK(max_difference(refine(lhs, d), refine(rhs, d)) <= 1e-8);
      }
    }
  }

  // A shadow at x(a') restricts to the shadow at a'.
  const FundamentalSubtree fs = index2();
  const auto sph = std::make_shared<const MatrixSystem>(spherical_system(fs.alphabet(), 0.0));
  const auto res = std::make_shared<const MatrixSystem>(restrict_system(*sph, fs));
  const Letter ap = fs.subgroup_alphabet().letter("abA");
  const Vec v = Vec::Constant(1, cplx(0.0, 2.0));
  const MultFunc u = restrict_function(res, fs, shadow(sph, fs.generator(ap).x, v));
  const MultFunc want = shadow(res, fs.subgroup_alphabet().word({ap}), v);
  const int d = std::max(u.depth(), want.depth());
  CHECK(max_difference(refine(u, d), refine(want, d)) <= 1e-14);
}

TEST_CASE("P sets") {
  const FundamentalSubtree fs = index2();
  const Alphabet& al = fs.alphabet();
  const auto p = compute_P(fs);
  std::set<Word> pa, pb;
  for (const PEntry& e : p[al.letter("a")]) pa.insert(e.word);
  for (const PEntry& e : p[al.letter("b")]) pb.insert(e.word);
  CHECK(pa == std::set<Word>{al.parse("a"), al.parse("aa"), al.parse("abA"), al.parse("aBA")});
  CHECK(pb == std::set<Word>{al.parse("b"), al.parse("bA")});
  CHECK(p[al.letter("A")].size() == 4);
  CHECK(p[al.letter("B")].size() == 2);
  std::size_t total = 0;
  for (const auto& row : p) {
    total += row.size();
    for (const PEntry& e : row) {
      CHECK(e.word == al.multiply(al.inverse(e.u), fs.generator(e.c).gamma));
    }
  }
  CHECK(total == 12);
}

TEST_CASE("induced spherical system") {
  const FundamentalSubtree fs = index2();
  const Alphabet& sub = fs.subgroup_alphabet();
  const auto sph = std::make_shared<const MatrixSystem>(spherical_system(sub, 0.0));
  const Induced ind = induce_system(*sph, fs);
  CHECK(ind.system->dims() == std::vector<int>{4, 2, 4, 2});
  CHECK(compatibility_defect(*ind.system) <= 1e-8);
  CHECK(ind.system->total_dim() == 2 * 6);

  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const InducedFamily fam = random_family(rng, sph, fs.D().size(), 3);
    const MultFunc uf = induce_function(ind, fs, fam);
    CHECK(std::abs(norm2(uf) - family_norm2(fam)) <= 1e-8 * family_norm2(fam));
  }
  // A family supported at one z with a single shadow keeps its norm.
  InducedFamily fam;
  for (std::size_t i = 0; i < fs.D().size(); ++i) fam.push_back(scale(random_function(rng, sph, 1), 0.0));
  fam[1] = shadow(sph, sub.word({sub.letter("aa")}), Vec::Constant(1, 3.0));
  CHECK(std::abs(norm2(induce_function(ind, fs, fam)) / family_norm2(fam) - 1.0) <= 1e-10);
}

TEST_CASE("induction through index 1 is the identity") {
  const FundamentalSubtree fs = index1();
  Rng rng(7);
  const MatrixSystem s = random_compatible_system(rng, fs.subgroup_alphabet(), {1, 2, 2, 1});
  const Induced ind = induce_system(s, fs);
  const auto sub = [&](Letter a) { return fs.subgroup_alphabet().letter(fs.alphabet().name(a)); };
  for (Letter a = 0; a < 4; ++a) {
    CHECK(oracle::max_abs_diff(ind.system->B(a), s.B(sub(a))) == 0.0);
    for (Letter b = 0; b < 4; ++b) CHECK(oracle::max_abs_diff(ind.system->H(b, a), s.H(sub(b), sub(a))) == 0.0);
  }
}

TEST_CASE("induction from random subgroup systems") {
  for (const FundamentalSubtree& fs : {index2(), index3()}) {
    Rng rng(8);
    const Alphabet& sub = fs.subgroup_alphabet();
    std::vector<int> dims;
    for (Letter c = 0; c < sub.size(); ++c) dims.push_back(1 + (c % 2));
    const auto s = std::make_shared<const MatrixSystem>(random_compatible_system(rng, sub, dims));
    const Induced ind = induce_system(*s, fs);
    CHECK(compatibility_defect(*ind.system) <= 1e-8);
    CHECK(ind.system->total_dim() == fs.index() * s->total_dim());
    for (int k = 0; k < 5; ++k) {
      const InducedFamily fam = random_family(rng, s, fs.D().size(), 2);
      const MultFunc uf = induce_function(ind, fs, fam);
      CHECK(std::abs(norm2(uf) - family_norm2(fam)) <= 1e-8 * family_norm2(fam));
      // Equivariance with the translated family.
      for (const char* g : {"a", "ab"}) {
        const Word x = fs.alphabet().parse(g);
        const MultFunc lhs = act(x, uf);
        const MultFunc rhs = induce_function(ind, fs, translate_family(fs, fam, x));
        const int d = std::max(lhs.depth(), rhs.depth()) + 1;
        CHECK(max_difference(refine(lhs, d), refine(rhs, d)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("truncation subtrees") {
  for (const FundamentalSubtree& fs : {index2(), index3()}) {
    for (const Word& z : fs.D()) {
      for (int n = static_cast<int>(z.size()) + 1; n <= 4; ++n) {
        const Truncation t = truncation_subtree(fs, z, n);
        CHECK(t.tree.is_complete());
        const auto term = t.tree.terminals();
        CHECK(std::set<Word>(term.begin(), term.end()) == std::set<Word>(t.terminals.begin(), t.terminals.end()));
        CHECK(t.terminals == truncation_terminals_direct(fs, z, n));
      }
    }
  }
  const FundamentalSubtree fs = index2();
  CHECK_THROWS_AS(truncation_subtree(fs, fs.alphabet().parse("a"), 1), ValidationError);
  CHECK_THROWS_AS(truncation_subtree(fs, Word(), 1, 6), ValidationError);

  // Index 1: S'_0 is the ball of radius N and the terminals its outer sphere.
  const FundamentalSubtree one = index1();
  const Truncation t = truncation_subtree(one, Word(), 3);
  CHECK(t.terminals == one.subgroup_alphabet().sphere(4));
}
