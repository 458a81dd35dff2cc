#include "mrep/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "mrep/errors.hpp"
#include "mrep/folding.hpp"

namespace mrep {

CosetAutomaton::CosetAutomaton(Alphabet alphabet, std::vector<std::vector<int>> next)
    : alphabet_(std::move(alphabet)), next_(std::move(next)) {
  const int n = index();
  if (n == 0) throw InputError("automaton: no states");
  for (const auto& row : next_) {
    if (static_cast<int>(row.size()) != alphabet_.size()) throw InputError("automaton: row has wrong length");
    for (int t : row) {
      if (t < 0 || t >= n) throw InputError("automaton: transition out of range");
    }
  }
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    std::vector<int> hit(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
      const int t = step(s, a);
      ++hit[static_cast<std::size_t>(t)];
      if (step(t, alphabet_.inverse(a)) != s) {
        throw InputError("automaton: letter " + alphabet_.name(alphabet_.inverse(a)) +
                         " does not invert " + alphabet_.name(a));
      }
    }
    for (int h : hit) {
      if (h != 1) throw InputError("automaton: letter " + alphabet_.name(a) + " is not a permutation");
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      const int t = step(s, a);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        queue.push_back(t);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("automaton: not connected from the base state");
  }
}

CosetAutomaton CosetAutomaton::from_generators(const Alphabet& alphabet, const std::vector<Word>& generators) {
  const FoldedGraph g = fold_petals(alphabet, generators, alphabet, {});
  if (!g.is_complete()) {
    throw InputError("automaton: the generators span a subgroup of infinite index");
  }
  return CosetAutomaton(alphabet, g.next);
}

CosetAutomaton CosetAutomaton::from_permutations(const Alphabet& alphabet,
                                                 const std::map<Letter, std::vector<int>>& perms) {
  if (perms.empty()) throw InputError("automaton: no permutations given");
  const std::size_t n = perms.begin()->second.size();
  bool zero_based = false;
  for (const auto& [a, p] : perms) {
    if (p.size() != n) throw InputError("automaton: permutations have different lengths");
    if (std::find(p.begin(), p.end(), 0) != p.end()) zero_based = true;
  }
  std::vector<std::vector<int>> next(n, std::vector<int>(static_cast<std::size_t>(alphabet.size()), -1));
  for (const auto& [a, p] : perms) {
    for (std::size_t s = 0; s < n; ++s) next[s][static_cast<std::size_t>(a)] = p[s] - (zero_based ? 0 : 1);
  }
  for (Letter a = 0; a < alphabet.size(); ++a) {
    if (perms.count(a)) continue;
    const Letter ai = alphabet.inverse(a);
    if (!perms.count(ai)) throw InputError("automaton: no permutation for " + alphabet.name(a) + " or its inverse");
    for (std::size_t s = 0; s < n; ++s) {
      const int t = next[s][static_cast<std::size_t>(ai)];
      if (t < 0 || static_cast<std::size_t>(t) >= n) throw InputError("automaton: transition out of range");
      next[static_cast<std::size_t>(t)][static_cast<std::size_t>(a)] = static_cast<int>(s);
    }
  }
  for (const auto& row : next) {
    if (std::find(row.begin(), row.end(), -1) != row.end()) {
      throw InputError("automaton: permutation is not a bijection");
    }
  }
  return CosetAutomaton(alphabet, std::move(next));
}

int CosetAutomaton::run(const Word& w, int from) const {
  int s = from;
  for (Letter a : w.letters) s = step(s, a);
  return s;
}

FundamentalSubtree::FundamentalSubtree(CosetAutomaton aut) : aut_(std::move(aut)) {
  const Alphabet& al = aut_.alphabet();
  const int n = aut_.index();
  rep_.assign(static_cast<std::size_t>(n), Word());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  seen[0] = true;
  // Breadth-first in letter order: the first word to reach a state is its
  // shortlex-least reduced representative.
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    d_.push_back(rep_[static_cast<std::size_t>(s)]);
    for (Word& c : al.children(rep_[static_cast<std::size_t>(s)])) {
      const int t = aut_.step(s, c.back());
      if (seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      rep_[static_cast<std::size_t>(t)] = std::move(c);
      queue.push_back(t);
    }
  }

  edge_.assign(static_cast<std::size_t>(n), std::vector<Letter>(static_cast<std::size_t>(al.size()), -1));
  std::vector<std::string> names;
  std::vector<Letter> inverse;
  for (const Word& u : d_) {
    const int s = aut_.run(u);
    for (Letter a = 0; a < al.size(); ++a) {
      const int t = aut_.step(s, a);
      const Word ua = al.append(u, a);
      if (ua == rep(t)) continue;  // tree edge
      if (edge_[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] >= 0) continue;
      const Word gamma = al.multiply(ua, al.inverse(rep(t)));
      const Letter id = static_cast<Letter>(gens_.size());
      gens_.push_back(InducedGenerator{gamma, ua, a});
      // Reverse edge: from t by a^{-1}, giving gamma^{-1} with x = rep(t) a^{-1}.
      const Word back = al.append(rep(t), al.inverse(a));
      gens_.push_back(InducedGenerator{al.inverse(gamma), back, al.inverse(a)});
      edge_[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = id;
      edge_[static_cast<std::size_t>(t)][static_cast<std::size_t>(al.inverse(a))] = id + 1;
      names.push_back(al.format(gamma));
      names.push_back(al.format(al.inverse(gamma)));
      inverse.push_back(id + 1);
      inverse.push_back(id);
    }
  }
  sub_ = Alphabet(std::move(names), std::move(inverse));
  verify();
}

bool FundamentalSubtree::in_D(const Word& w) const {
  return rep(aut_.run(w)) == w;
}

Word FundamentalSubtree::expand(const Word& subgroup_word) const {
  std::vector<Letter> seq;
  for (Letter ap : subgroup_word.letters) {
    const Word& g = gens_[static_cast<std::size_t>(ap)].gamma;
    seq.insert(seq.end(), g.letters.begin(), g.letters.end());
  }
  return alphabet().reduce(seq);
}

FundamentalSubtree::Factor FundamentalSubtree::decompose_left(const Word& x) const {
  const Alphabet& al = alphabet();
  // Each non-tree edge contributes rep(s) a rep(t)^{-1}; tree edges contribute
  // e, so the product along the run telescopes to x rep(end)^{-1}.
  std::vector<Letter> spelled;
  int s = 0;
  for (Letter a : x.letters) {
    const Letter ap = edge_letter(s, a);
    if (ap >= 0) spelled.push_back(ap);
    s = aut_.step(s, a);
  }
  Factor f;
  f.u = rep(s);
  f.gamma = al.multiply(x, al.inverse(f.u));
  f.gamma_letters = sub_.reduce(spelled);
  if (expand(f.gamma_letters) != f.gamma) {
    throw InternalError("decompose_left: spelling of " + al.format(f.gamma) + " does not expand back");
  }
  return f;
}

FiniteSubtree FundamentalSubtree::complete_D() const {
  std::vector<Word> v = d_;
  for (const InducedGenerator& g : gens_) v.push_back(g.x);
  return FiniteSubtree(alphabet(), std::move(v));
}

void FundamentalSubtree::verify(int sample_length) const {
  const Alphabet& al = alphabet();
  const int n = index();
  if (static_cast<int>(d_.size()) != n) throw InternalError("schreier: |D| differs from the index");
  for (const Word& u : d_) {
    if (!u.empty() && !in_D(al.drop_last(u))) throw InternalError("schreier: D is not prefix closed");
  }
  const int rank = 1 + n * (al.size() / 2 - 1);
  if (static_cast<int>(gens_.size()) != 2 * rank) throw InternalError("schreier: rank identity fails");

  // Distance from a vertex to g D, by brute force over D.
  auto dist_to = [&](const Word& v, const Word& g) {
    int best = std::numeric_limits<int>::max();
    for (const Word& u : d_) best = std::min(best, al.distance(v, al.multiply(g, u)));
    return best;
  };

  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const InducedGenerator& g = gens_[i];
    if (g.x.empty() || g.x.back() != g.q) throw InternalError("schreier: q is not the last letter of x");
    int closest = std::numeric_limits<int>::max();
    for (const Word& u : d_) {
      const Word v = al.multiply(g.gamma, u);
      if (!Alphabet::cone_contains(g.x, v)) throw InternalError("schreier: a'D leaves the cone of x(a')");
      closest = std::min(closest, dist_to(v, Word()));
    }
    if (closest != 1 || dist_to(g.x, Word()) != 1) throw InternalError("schreier: d(D, a'D) is not 1");
  }

  // x(gamma a') = gamma x(a') for reduced gamma a' with |gamma|' <= sample_length.
  std::vector<Word> level{Word()};
  for (int len = 0; len <= sample_length; ++len) {
    std::vector<Word> next;
    for (const Word& gw : level) {
      const Word gamma = expand(gw);
      for (Letter ap = 0; ap < sub_.size(); ++ap) {
        if (!gw.empty() && sub_.inverse(gw.back()) == ap) continue;
        const Word target = expand(sub_.append(gw, ap));
        Word nearest;
        int best = std::numeric_limits<int>::max();
        int ties = 0;
        for (const Word& u : d_) {
          const Word v = al.multiply(target, u);
          const int d = dist_to(v, gamma);
          if (d < best) {
            best = d;
            nearest = v;
            ties = 1;
          } else if (d == best) {
            ++ties;
          }
        }
        if (best != 1 || ties != 1 || nearest != al.multiply(gamma, gens_[static_cast<std::size_t>(ap)].x)) {
          throw InternalError("schreier: translation rule for x fails");
        }
        Word ext = gw;
        ext.letters.push_back(ap);
        next.push_back(std::move(ext));
      }
    }
    level = std::move(next);
  }

  const FiniteSubtree dprime = complete_D();
  if (!dprime.is_complete()) throw InternalError("schreier: D' is not complete");
  std::set<Word> xs;
  for (const InducedGenerator& g : gens_) xs.insert(g.x);
  const auto term = dprime.terminals();
  if (std::set<Word>(term.begin(), term.end()) != xs) throw InternalError("schreier: terminals of D' differ from x(A')");
}

}  // namespace mrep
