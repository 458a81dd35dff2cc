#include "mrep/transport.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mrep/errors.hpp"

namespace mrep {

namespace {

void require_compatible(const MatrixSystem& sys, const char* who) {
  sys.validate();
  double scale = 1.0;
  for (Letter a = 0; a < sys.letters(); ++a) scale = std::max(scale, spectral_norm(sys.B(a)));
  const double defect = compatibility_defect(sys);
  if (defect > 1e-8 * scale) {
    std::ostringstream os;
    os << who << ": input system is not compatible (defect " << defect << ")";
    throw ValidationError(os.str());
  }
}

// H along the path that leaves `start` (a prefix of w) and ends at w.
Mat path_product(const MatrixSystem& sys, const Word& w, std::size_t start_len) {
  Letter prev = w[start_len - 1];
  Mat m = Mat::Identity(sys.dim(prev), sys.dim(prev));
  for (std::size_t k = start_len; k < w.size(); ++k) {
    m = sys.H(w[k], prev) * m;
    prev = w[k];
  }
  return m;
}

std::map<Word, int> index_D(const FundamentalSubtree& fs) {
  std::map<Word, int> idx;
  for (std::size_t i = 0; i < fs.D().size(); ++i) idx[fs.D()[i]] = static_cast<int>(i);
  return idx;
}

}  // namespace

MatrixSystem restrict_system(const MatrixSystem& sys, const FundamentalSubtree& fs) {
  if (!(sys.alphabet() == fs.alphabet())) throw InputError("restrict_system: alphabet mismatch");
  require_compatible(sys, "restrict_system");
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  std::vector<int> dims;
  for (Letter ap = 0; ap < sub.size(); ++ap) dims.push_back(sys.dim(fs.generator(ap).q));
  MatrixSystem out(sub, dims);
  for (Letter ap = 0; ap < sub.size(); ++ap) {
    const InducedGenerator& ga = fs.generator(ap);
    out.set_B(ap, sys.B(ga.q));
    for (Letter bp = 0; bp < sub.size(); ++bp) {
      if (sub.inverse(ap) == bp) continue;
      const InducedGenerator& gb = fs.generator(bp);
      const Word w = al.multiply(ga.gamma, gb.x);
      if (!Alphabet::cone_contains(ga.x, w) || w.size() <= ga.x.size() || w.back() != gb.q) {
        throw InternalError("restrict_system: a'x(b') = " + al.format(w) + " does not extend x(a') = " +
                            al.format(ga.x));
      }
      out.set_H(bp, ap, path_product(sys, w, ga.x.size()));
    }
  }
  return out;
}

MultFunc restrict_function(std::shared_ptr<const MatrixSystem> restricted, const FundamentalSubtree& fs,
                           const MultFunc& f) {
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  if (!(f.system().alphabet() == al)) throw InputError("restrict_function: function alphabet mismatch");
  if (!(restricted->alphabet() == sub)) throw InputError("restrict_function: restricted system alphabet mismatch");

  int depth = 1;
  for (;; ++depth) {
    if (depth > f.depth_cap()) throw ResourceError("restrict_function: output depth exceeds the cap");
    bool ok = true;
    for (const Word& y : sub.sphere(depth - 1)) {
      const Word ey = fs.expand(y);
      for (Letter ap = 0; ap < sub.size() && ok; ++ap) {
        if (!y.empty() && sub.inverse(y.back()) == ap) continue;
        ok = static_cast<int>(al.multiply(ey, fs.generator(ap).x).size()) >= f.depth();
      }
      if (!ok) break;
    }
    if (ok) break;
  }

  MultFunc out(std::move(restricted), depth, f.depth_cap());
  for (std::size_t i = 0; i < out.sphere_count(); ++i) {
    const Word ya = out.word_at(i);
    const InducedGenerator& g = fs.generator(ya.back());
    const Word w = al.multiply(fs.expand(sub.drop_last(ya)), g.x);
    if (w.back() != g.q) throw InternalError("restrict_function: y'x(a') does not end in q(a')");
    out.set_value_at(i, evaluate(f, w));
  }
  return out;
}

std::vector<std::vector<PEntry>> compute_P(const FundamentalSubtree& fs) {
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  std::vector<std::vector<PEntry>> p(static_cast<std::size_t>(al.size()));
  for (const Word& u : fs.D()) {
    for (Letter c = 0; c < sub.size(); ++c) {
      Word w = al.multiply(al.inverse(u), fs.generator(c).gamma);
      if (w.empty()) continue;
      const Letter a = w[0];
      p[static_cast<std::size_t>(a)].push_back(PEntry{u, c, std::move(w)});
    }
  }
  return p;
}

Induced induce_system(const MatrixSystem& sub_system, const FundamentalSubtree& fs) {
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  if (!(sub_system.alphabet() == sub)) throw InputError("induce_system: system is not over the subgroup alphabet");
  require_compatible(sub_system, "induce_system");

  Induced ind;
  ind.P = compute_P(fs);
  std::vector<int> dims;
  // (u, c') -> (a, position in P(a))
  std::map<std::pair<Word, Letter>, std::pair<Letter, std::size_t>> where;
  for (Letter a = 0; a < al.size(); ++a) {
    std::vector<int> off;
    int d = 0;
    for (std::size_t i = 0; i < ind.P[a].size(); ++i) {
      const PEntry& e = ind.P[a][i];
      off.push_back(d);
      d += sub_system.dim(e.c);
      where[{e.u, e.c}] = {a, i};
    }
    ind.offsets.push_back(std::move(off));
    dims.push_back(d);
  }
  auto locate = [&](const Word& u, Letter c) -> std::optional<std::pair<Letter, std::size_t>> {
    auto it = where.find({u, c});
    if (it == where.end()) return std::nullopt;
    return it->second;
  };

  MatrixSystem out(al, dims);
  for (Letter a = 0; a < al.size(); ++a) {
    Mat b = Mat::Zero(dims[a], dims[a]);
    for (std::size_t i = 0; i < ind.P[a].size(); ++i) {
      const Letter c = ind.P[a][i].c;
      b.block(ind.offsets[a][i], ind.offsets[a][i], sub_system.dim(c), sub_system.dim(c)) = sub_system.B(c);
    }
    out.set_B(a, b);
  }

  for (Letter a = 0; a < al.size(); ++a) {
    const Letter ainv = al.inverse(a);
    // The case split, checked for every v in D before any block is used.
    for (const Word& v : fs.D()) {
      const Word va = al.append(v, ainv);
      if (fs.in_D(va)) {
        for (Letter c = 0; c < sub.size(); ++c) {
          auto left = locate(va, c);
          const bool lhs = left && left->first == a;
          auto right = locate(v, c);
          const bool rhs = right && al.inverse(right->first) != a;
          if (lhs != rhs) throw InternalError("induce_system: copy case does not match P");
        }
      } else {
        const auto f = fs.decompose_left(va);
        if (f.gamma_letters.size() != 1) {
          throw InternalError("induce_system: " + al.format(va) + " is not one generator away from D");
        }
        const Letter c = sub.inverse(f.gamma_letters[0]);
        auto at = locate(f.u, c);
        if (!at || at->first != a) throw InternalError("induce_system: a v^{-1} = u^{-1} c' is not in P(a)");
        for (Letter d = 0; d < sub.size(); ++d) {
          if (sub.inverse(c) == d) continue;
          auto row = locate(v, d);
          if (!row || al.inverse(row->first) == a) {
            throw InternalError("induce_system: v^{-1} d' does not land in a cone C(b) with ab != e");
          }
        }
      }
    }

    for (Letter b = 0; b < al.size(); ++b) {
      if (ainv == b) continue;
      Mat h = Mat::Zero(dims[b], dims[a]);
      for (std::size_t i = 0; i < ind.P[b].size(); ++i) {
        const PEntry& row = ind.P[b][i];
        const Word va = al.append(row.u, ainv);
        if (fs.in_D(va)) {
          auto col = locate(va, row.c);
          if (!col || col->first != a) throw InternalError("induce_system: missing copy block");
          const int d = sub_system.dim(row.c);
          h.block(ind.offsets[b][i], ind.offsets[a][col->second], d, d) = Mat::Identity(d, d);
          continue;
        }
        const auto f = fs.decompose_left(va);
        const Letter c = sub.inverse(f.gamma_letters[0]);
        if (sub.inverse(c) == row.c) continue;  // H'_{d'c'} = 0
        auto col = locate(f.u, c);
        h.block(ind.offsets[b][i], ind.offsets[a][col->second], sub_system.dim(row.c), sub_system.dim(c)) =
            sub_system.H(row.c, c);
      }
      out.set_H(b, a, h);
    }
  }
  ind.system = std::make_shared<const MatrixSystem>(std::move(out));
  return ind;
}

MultFunc induce_function(const Induced& ind, const FundamentalSubtree& fs, const InducedFamily& family) {
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  if (family.size() != fs.D().size()) throw InputError("induce_function: one function per element of D is required");
  for (const MultFunc& f : family) {
    if (!(f.system().alphabet() == sub)) throw InputError("induce_function: family is not over the subgroup alphabet");
  }
  const std::map<Word, int> didx = index_D(fs);
  const int cap = family.front().depth_cap();

  struct Eval {
    int member;
    Word at;
  };
  auto route = [&](const Word& x, const PEntry& e) {
    const auto f = fs.decompose_left(al.multiply(e.u, al.inverse(x)));
    return Eval{didx.at(f.u), sub.multiply(sub.inverse(f.gamma_letters), sub.word({e.c}))};
  };

  int depth = 1;
  for (;; ++depth) {
    if (depth > cap) throw ResourceError("induce_function: output depth exceeds the cap");
    bool ok = true;
    for (const Word& x : al.sphere(depth - 1)) {
      for (Letter a = 0; a < al.size() && ok; ++a) {
        if (!x.empty() && al.inverse(x.back()) == a) continue;
        for (const PEntry& e : ind.P[a]) {
          const Eval ev = route(x, e);
          if (static_cast<int>(ev.at.size()) < family[static_cast<std::size_t>(ev.member)].depth()) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) break;
    }
    if (ok) break;
  }

  MultFunc out(ind.system, depth, cap);
  for (std::size_t i = 0; i < out.sphere_count(); ++i) {
    const Word xa = out.word_at(i);
    const Letter a = xa.back();
    const Word x = al.drop_last(xa);
    Vec v = Vec::Zero(ind.system->dim(a));
    for (std::size_t j = 0; j < ind.P[a].size(); ++j) {
      const PEntry& e = ind.P[a][j];
      const Eval ev = route(x, e);
      if (ev.at.back() != e.c) {
        throw InternalError("induce_function: " + sub.format(ev.at) + " does not end in " + sub.name(e.c));
      }
      const Vec piece = evaluate(family[static_cast<std::size_t>(ev.member)], ev.at);
      v.segment(ind.offsets[a][j], piece.size()) = piece;
    }
    out.set_value_at(i, std::move(v));
  }
  return out;
}

double family_norm2(const InducedFamily& family) {
  double s = 0.0;
  for (const MultFunc& f : family) s += norm2(f);
  return s;
}

InducedFamily translate_family(const FundamentalSubtree& fs, const InducedFamily& family, const Word& x) {
  const Alphabet& al = fs.alphabet();
  const std::map<Word, int> didx = index_D(fs);
  InducedFamily out;
  for (const Word& u : fs.D()) {
    const auto f = fs.decompose_left(al.multiply(u, x));
    out.push_back(act(f.gamma_letters, family[static_cast<std::size_t>(didx.at(f.u))]));
  }
  return out;
}

Truncation truncation_subtree(const FundamentalSubtree& fs, const Word& z, int N, int M) {
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  if (N <= static_cast<int>(z.size())) throw ValidationError("truncation_subtree: N must exceed |z|");

  auto in_s0 = [&](const Word& g) {
    const Word zg = al.multiply(z, fs.expand(g));
    for (const Word& u : fs.D()) {
      if (static_cast<int>(al.multiply(zg, u).size()) <= N) return true;
    }
    return false;
  };

  std::vector<Word> vertices{Word()};
  std::vector<Word> terminals;
  std::deque<Word> queue{Word()};
  while (!queue.empty()) {
    const Word g = std::move(queue.front());
    queue.pop_front();
    for (Word& c : sub.children(g)) {
      vertices.push_back(c);
      if (in_s0(c)) {
        queue.push_back(std::move(c));
      } else {
        terminals.push_back(std::move(c));
      }
    }
  }
  std::sort(terminals.begin(), terminals.end());
  FiniteSubtree tree(sub, vertices);
  if (!tree.is_complete()) throw InternalError("truncation_subtree: result is not complete");
  for (const Word& w : sub.ball_words(Word(), M)) {
    if (!tree.contains(w)) throw ValidationError("truncation_subtree: N is too small for the requested radius");
  }
  return Truncation{std::move(tree), std::move(terminals)};
}

std::vector<Word> truncation_terminals_direct(const FundamentalSubtree& fs, const Word& z, int N) {
  const Alphabet& al = fs.alphabet();
  const auto p = compute_P(fs);
  const Word zinv = al.inverse(z);
  std::set<Word> out;
  for (const Word& x : al.sphere(N)) {
    for (Letter a = 0; a < al.size(); ++a) {
      if (!x.empty() && al.inverse(x.back()) == a) continue;
      for (const PEntry& e : p[a]) {
        const Word g = al.multiply(zinv, x, e.word);
        if (!fs.automaton().contains(g)) continue;
        out.insert(fs.decompose_left(g).gamma_letters);
      }
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace mrep
