#pragma once

#include <map>
#include <string>
#include <vector>

#include "mrep/words.hpp"

namespace mrep {

// Right cosets of a finite-index subgroup as a permutation action of the
// letters. State 0 is the subgroup itself; a word runs from state 0 to the
// coset it represents.
class CosetAutomaton {
 public:
  // next[state][letter]; validates permutations, the inverse rule and
  // connectivity from state 0.
  CosetAutomaton(Alphabet alphabet, std::vector<std::vector<int>> next);

  // Stallings folding of the generators. Throws InputError if the folded
  // graph is incomplete, i.e. the subgroup has infinite index.
  static CosetAutomaton from_generators(const Alphabet& alphabet, const std::vector<Word>& generators);

  // Permutations keyed by letter. Both 0-based and 1-based lists are
  // accepted (1-based when no entry is 0); a missing inverse letter gets the
  // inverse permutation, a present one is checked.
  static CosetAutomaton from_permutations(const Alphabet& alphabet,
                                          const std::map<Letter, std::vector<int>>& perms);

  const Alphabet& alphabet() const { return alphabet_; }
  int index() const { return static_cast<int>(next_.size()); }
  int step(int state, Letter a) const { return next_[static_cast<std::size_t>(state)][static_cast<std::size_t>(a)]; }
  int run(const Word& w, int from = 0) const;
  bool contains(const Word& w) const { return run(w) == 0; }

 private:
  Alphabet alphabet_;
  std::vector<std::vector<int>> next_;
};

struct InducedGenerator {
  Word gamma;  // the subgroup element as an A-word
  Word x;      // vertex of gamma D adjacent to D
  Letter q;    // last letter of x
};

// A Schreier transversal D that is a fundamental domain for the subgroup
// acting on the tree, with the induced free basis A'.
class FundamentalSubtree {
 public:
  explicit FundamentalSubtree(CosetAutomaton aut);

  const CosetAutomaton& automaton() const { return aut_; }
  const Alphabet& alphabet() const { return aut_.alphabet(); }
  // A' with names taken from the A-words of the generators.
  const Alphabet& subgroup_alphabet() const { return sub_; }
  int index() const { return aut_.index(); }

  // Representatives in shortlex order; rep(state) is the one in that coset.
  const std::vector<Word>& D() const { return d_; }
  const Word& rep(int state) const { return rep_[static_cast<std::size_t>(state)]; }
  bool in_D(const Word& w) const;

  const InducedGenerator& generator(Letter a_prime) const { return gens_[static_cast<std::size_t>(a_prime)]; }
  // Letter of A' attached to a non-tree edge, or -1 on tree edges.
  Letter edge_letter(int state, Letter a) const {
    return edge_[static_cast<std::size_t>(state)][static_cast<std::size_t>(a)];
  }

  Word expand(const Word& subgroup_word) const;  // A' -> A

  struct Factor {
    Word gamma;          // x u^{-1} as an A-word
    Word gamma_letters;  // the same element spelled over A'
    Word u;              // element of D
  };
  // x = gamma u with u in D.
  Factor decompose_left(const Word& x) const;

  // D together with the vertices x(a').
  FiniteSubtree complete_D() const;

  // Structural checks: prefix closure, rank, d(D, a'D) = 1, a'D in C(x(a')),
  // the translation rule for x on A'-words up to the given length, and
  // completeness of D'. Throws InternalError on failure.
  void verify(int sample_length = 2) const;

 private:
  CosetAutomaton aut_;
  std::vector<Word> d_;
  std::vector<Word> rep_;
  std::vector<std::vector<Letter>> edge_;
  std::vector<InducedGenerator> gens_;
  Alphabet sub_;
};

}  // namespace mrep
