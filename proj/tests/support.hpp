#pragma once

// Reference computations for the tests. Each one is written independently
// of the library routine it checks: dense Kronecker assembly instead of the
// real Hermitian basis, exhaustive enumeration instead of the exact cone
// test, explicit H products instead of sphere propagation.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mrep/changegen.hpp"
#include "mrep/multfunc.hpp"
#include "mrep/random.hpp"
#include "mrep/subgroup.hpp"
#include "mrep/system.hpp"
#include "mrep/words.hpp"

namespace mrep::oracle {

inline Alphabet free2() { return Alphabet::with_case_convention({"a", "b", "A", "B"}); }
inline Alphabet greek2() { return Alphabet::with_case_convention({"alpha", "beta", "ALPHA", "BETA"}); }

// Spectral radius of F -> (sum_b H_ba^* F_b H_ba)_a on all complex matrices,
// using vec(X^* F X) = (X^T kron X^*) vec(F).
inline double dense_spectral_radius(const MatrixSystem& sys) {
  std::vector<Eigen::Index> off(static_cast<std::size_t>(sys.letters()) + 1, 0);
  for (Letter a = 0; a < sys.letters(); ++a) off[a + 1] = off[a] + sys.dim(a) * sys.dim(a);
  const Eigen::Index n = off.back();
  if (n == 0) return 0.0;
  Mat big = Mat::Zero(n, n);
  for (Letter a = 0; a < sys.letters(); ++a) {
    for (Letter b = 0; b < sys.letters(); ++b) {
      const Mat& h = sys.H(b, a);
      if (h.size() == 0) continue;
      const Mat ht = h.transpose();
      const Mat hs = h.adjoint();
      Mat kron(ht.rows() * hs.rows(), ht.cols() * hs.cols());
      for (Eigen::Index i = 0; i < ht.rows(); ++i) {
        for (Eigen::Index j = 0; j < ht.cols(); ++j) {
          kron.block(i * hs.rows(), j * hs.cols(), hs.rows(), hs.cols()) = ht(i, j) * hs;
        }
      }
      big.block(off[a], off[b], kron.rows(), kron.cols()) += kron;
    }
  }
  Eigen::ComplexEigenSolver<Mat> es(big, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// All reduced words of exactly the given length starting with `prefix`.
inline std::vector<Word> extensions(const Alphabet& al, const Word& prefix, int extra) {
  std::vector<Word> layer{prefix};
  for (int k = 0; k < extra; ++k) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (Letter a = 0; a < al.size(); ++a) {
        if (!w.empty() && al.inverse(w.back()) == a) continue;
        Word x = w;
        x.letters.push_back(a);
        next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
  }
  return layer;
}

// C'(y) in C(z), tested on every u in C'(y) with |u|' <= |y|' + depth.
inline bool cone_included_upto(const GeneratorMap& gm, const Word& y, const Word& z, int depth) {
  for (int k = 0; k <= depth; ++k) {
    for (const Word& u : extensions(gm.source(), y, k)) {
      if (!Alphabet::cone_contains(z, gm.expand(u))) return false;
    }
  }
  return true;
}

// Y(z) by walking down the source tree, with the enumeration test above.
inline std::set<Word> frontier_upto(const GeneratorMap& gm, const Word& z, int depth, int max_len = 8) {
  std::set<Word> out;
  std::deque<Word> queue{Word()};
  while (!queue.empty()) {
    Word y = queue.front();
    queue.pop_front();
    if (!y.empty() && cone_included_upto(gm, y, z, depth)) {
      out.insert(y);
      continue;
    }
    if (static_cast<int>(y.size()) >= max_len) continue;
    for (const Word& c : extensions(gm.source(), y, 1)) queue.push_back(c);
  }
  return out;
}

// First vertex on the source geodesic [e, w] whose cone lies in C(a).
inline Word first_inclusion(const GeneratorMap& gm, const Word& w, const Word& a, int depth) {
  for (std::size_t k = 1; k <= w.size(); ++k) {
    Word p(std::vector<Letter>(w.letters.begin(), w.letters.begin() + static_cast<long>(k)));
    if (cone_included_upto(gm, p, a, depth)) return p;
  }
  return w;
}

// Composition of random Nielsen moves on the standard basis of F2, keeping
// every image of length at most max_len. The source alphabet is greek2().
inline GeneratorMap random_nielsen_map(Rng& rng, int moves, int max_len = 3) {
  const Alphabet src = greek2();
  const Alphabet tgt = free2();
  std::vector<Word> img{tgt.parse("a"), tgt.parse("b")};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int m = 0; m < moves; ++m) {
    std::vector<Word> trial = img;
    const int i = pick(rng) % 2;
    const int j = 1 - i;
    switch (pick(rng)) {
      case 0: trial[i] = tgt.multiply(img[i], img[j]); break;
      case 1: trial[i] = tgt.multiply(img[j], img[i]); break;
      case 2: trial[i] = tgt.multiply(img[i], tgt.inverse(img[j])); break;
      default: trial[i] = tgt.inverse(img[i]); break;
    }
    if (static_cast<int>(trial[i].size()) <= max_len) img = trial;
  }
  std::vector<Word> images{img[0], img[1], tgt.inverse(img[0]), tgt.inverse(img[1])};
  return GeneratorMap(src, tgt, images);
}

// Grows ball(e, radius) by replacing random terminals with their children.
inline FiniteSubtree random_complete_subtree(Rng& rng, const Alphabet& al, int radius, int max_depth,
                                             int expansions) {
  std::vector<Word> verts = al.ball_words(Word(), radius);
  std::set<Word> all(verts.begin(), verts.end());
  std::vector<Word> leaves = al.sphere(radius);
  for (int k = 0; k < expansions && !leaves.empty(); ++k) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
    const Word t = leaves[i];
    if (static_cast<int>(t.size()) >= max_depth) continue;
    leaves.erase(leaves.begin() + static_cast<long>(i));
    for (const Word& c : al.children(t)) {
      all.insert(c);
      leaves.push_back(c);
    }
  }
  return FiniteSubtree(al, std::vector<Word>(all.begin(), all.end()));
}

// Complete subtree {parent(x), x, children of x, ...} grown from x away
// from e.
inline FiniteSubtree random_based_subtree(Rng& rng, const Alphabet& al, const Word& x, int max_extra,
                                          int expansions) {
  std::set<Word> all{al.drop_last(x), x};
  std::vector<Word> leaves;
  for (const Word& c : al.children(x)) {
    all.insert(c);
    leaves.push_back(c);
  }
  for (int k = 0; k < expansions && !leaves.empty(); ++k) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
    const Word t = leaves[i];
    if (t.size() >= x.size() + static_cast<std::size_t>(max_extra)) continue;
    leaves.erase(leaves.begin() + static_cast<long>(i));
    for (const Word& c : al.children(t)) {
      all.insert(c);
      leaves.push_back(c);
    }
  }
  return FiniteSubtree(al, std::vector<Word>(all.begin(), all.end()));
}

// f(y) by multiplying H along y from the sphere of f, one letter at a time.
inline Vec value_by_products(const MultFunc& f, const Word& y) {
  const MatrixSystem& sys = f.system();
  Word head(std::vector<Letter>(y.letters.begin(), y.letters.begin() + f.depth()));
  Vec v = f.value(head);
  for (std::size_t k = static_cast<std::size_t>(f.depth()); k < y.size(); ++k) {
    v = sys.H(y[k], y[k - 1]) * v;
  }
  return v;
}

inline double form_norm2(const MatrixSystem& sys, Letter a, const Vec& v) {
  if (v.size() == 0) return 0.0;
  return (v.adjoint() * sys.B(a) * v)(0, 0).real();
}

// sum over the terminals of a tree of B(f(t), f(t)), skipping `skip`.
inline double terminal_sum(const MultFunc& f, const FiniteSubtree& tree, const Word* skip = nullptr) {
  double s = 0.0;
  for (const Word& t : tree.vertices()) {
    if (tree.relative_degree(t) != 1) continue;
    if (skip && t == *skip) continue;
    s += form_norm2(f.system(), t.back(), value_by_products(f, t));
  }
  return s;
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
  if (x.size() == 0 && y.size() == 0) return 0.0;
  return (x - y).cwiseAbs().maxCoeff();
}

// Direct sum of the parts, conjugated by random per-letter unitaries.
inline MatrixSystem conjugated_sum(Rng& rng, const std::vector<MatrixSystem>& parts) {
  MatrixSystem s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s = direct_sum(s, parts[i]);
  return conjugate(s, random_unitary_map(rng, s));
}

}  // namespace mrep::oracle
