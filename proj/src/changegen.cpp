#include "mrep/changegen.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mrep/errors.hpp"
#include "mrep/folding.hpp"

namespace mrep {

namespace {

// Frontier searches visit at most this many source vertices.
constexpr std::size_t kSearchLimit = 1u << 20;

}  // namespace

GeneratorMap::GeneratorMap(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.size()) {
    throw InputError("generator map: one image per source letter is required");
  }
  for (Letter alpha = 0; alpha < source_.size(); ++alpha) {
    const Word& w = images_[alpha];
    if (!target_.is_reduced(w)) throw InputError("generator map: image of " + source_.name(alpha) + " is not reduced");
    if (w.empty()) throw ValidationError("generator map: image of " + source_.name(alpha) + " is trivial");
    if (images_[source_.inverse(alpha)] != target_.inverse(w)) {
      throw ValidationError("generator map: image of " + source_.name(source_.inverse(alpha)) +
                            " is not the inverse of the image of " + source_.name(alpha));
    }
    source_stretch_ = std::max(source_stretch_, static_cast<int>(w.size()));
  }
  if (source_.size() != target_.size()) {
    throw ValidationError("generator map: the two alphabets have different ranks");
  }

  std::vector<Word> petals;
  std::vector<Word> labels;
  for (Letter alpha = 0; alpha < source_.size(); ++alpha) {
    if (source_.inverse(alpha) < alpha) continue;
    petals.push_back(images_[alpha]);
    labels.push_back(source_.word({alpha}));
  }
  const FoldedGraph g = fold_petals(target_, petals, source_, labels);
  if (g.vertex_count != 1 || !g.is_complete()) {
    throw ValidationError("generator map: the images do not generate the whole group");
  }
  for (Letter a = 0; a < target_.size(); ++a) {
    preimages_.push_back(g.label[0][static_cast<std::size_t>(a)]);
    if (expand(preimages_.back()) != target_.word({a})) {
      throw InternalError("generator map: folded label does not expand to its letter");
    }
    target_stretch_ = std::max(target_stretch_, static_cast<int>(preimages_.back().size()));
  }
}

Word GeneratorMap::expand(const Word& source_word) const {
  std::vector<Letter> seq;
  for (Letter alpha : source_word.letters) {
    seq.insert(seq.end(), images_[alpha].letters.begin(), images_[alpha].letters.end());
  }
  return target_.reduce(seq);
}

Word GeneratorMap::contract(const Word& target_word) const {
  std::vector<Letter> seq;
  for (Letter a : target_word.letters) {
    seq.insert(seq.end(), preimages_[a].letters.begin(), preimages_[a].letters.end());
  }
  return source_.reduce(seq);
}

bool GeneratorMap::spans(const Word& y, const Word& p) const {
  // p lies on the geodesic from expand(w) to expand(w alpha) exactly when
  // p = expand(w) pi for a prefix pi of the image of alpha.
  for (Letter alpha = 0; alpha < source_.size(); ++alpha) {
    const Word& img = images_[alpha];
    for (std::size_t k = 0; k <= img.size(); ++k) {
      const Word pi(std::vector<Letter>(img.letters.begin(), img.letters.begin() + static_cast<long>(k)));
      const Word w = contract(target_.multiply(p, target_.inverse(pi)));
      if (!Alphabet::cone_contains(y, w)) continue;
      if (Alphabet::cone_contains(y, source_.append(w, alpha))) return true;
    }
  }
  return false;
}

bool GeneratorMap::cone_included(const Word& y, const Word& z) const {
  if (y.empty() || z.empty()) throw ValidationError("cone_included: words must not be e");
  if (!Alphabet::cone_contains(z, expand(y))) return false;
  return !spans(y, target_.drop_last(z));
}

bool GeneratorMap::cone_intersects(const Word& y, const Word& z) const {
  if (y.empty() || z.empty()) throw ValidationError("cone_intersects: words must not be e");
  return Alphabet::cone_contains(z, expand(y)) || spans(y, z);
}

std::vector<Word> YFrontier::words() const {
  std::vector<Word> out;
  for (const YMember& m : members) out.push_back(m.word);
  return out;
}

YFrontier compute_Y(const GeneratorMap& gm, const Word& z) {
  if (z.empty()) throw ValidationError("compute_Y: z must not be e");
  const Alphabet& src = gm.source();
  const Alphabet& tgt = gm.target();
  YFrontier out{z, {}};
  std::deque<Word> queue;
  for (Word& c : src.children(Word())) queue.push_back(std::move(c));
  std::size_t visited = 0;
  while (!queue.empty()) {
    Word y = std::move(queue.front());
    queue.pop_front();
    if (++visited > kSearchLimit) throw ResourceError("compute_Y: search limit exceeded");
    if (gm.cone_included(y, z)) {
      YMember m{y, false};
      for (Letter b = 0; b < tgt.size(); ++b) {
        if (tgt.inverse(z.back()) == b) continue;
        Word zb = z;
        zb.letters.push_back(b);
        if (gm.cone_included(y, zb)) {
          m.y1 = true;
          break;
        }
      }
      out.members.push_back(std::move(m));
    } else if (gm.cone_intersects(y, z)) {
      for (Word& c : src.children(y)) queue.push_back(std::move(c));
    }
  }
  std::sort(out.members.begin(), out.members.end(),
            [](const YMember& l, const YMember& r) { return l.word < r.word; });
  return out;
}

FiniteSubtree pruned_subtree(const GeneratorMap& gm, const Word& w, Letter a) {
  const Alphabet& src = gm.source();
  const Alphabet& tgt = gm.target();
  const YFrontier y = compute_Y(gm, tgt.word({a}));
  auto it = std::find_if(y.members.begin(), y.members.end(), [&](const YMember& m) { return m.word == w; });
  if (it == y.members.end() || it->y1) {
    throw ValidationError("pruned_subtree: " + src.format(w) + " is not in Y0(" + tgt.name(a) + ")");
  }
  auto lands = [&](const Word& u) {
    for (Letter b = 0; b < tgt.size(); ++b) {
      if (tgt.inverse(a) == b) continue;
      if (gm.cone_included(u, tgt.word({a, b}))) return true;
    }
    return false;
  };
  std::vector<Word> vertices{src.drop_last(w), w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    for (Word& c : src.children(u)) {
      vertices.push_back(c);
      if (vertices.size() > kSearchLimit) throw ResourceError("pruned_subtree: search limit exceeded");
      if (!lands(c)) queue.push_back(std::move(c));
    }
  }
  return complete_subtree_of(src, std::move(vertices));
}

Transported transport_system(const GeneratorMap& gm, const MatrixSystem& sys) {
  if (!(sys.alphabet() == gm.source())) throw InputError("transport_system: system is not over the source alphabet");
  sys.validate();
  double scale = 1.0;
  for (Letter a = 0; a < sys.letters(); ++a) scale = std::max(scale, spectral_norm(sys.B(a)));
  const double defect = compatibility_defect(sys);
  if (defect > 1e-8 * scale) {
    std::ostringstream os;
    os << "transport_system: source system is not compatible (defect " << defect << ")";
    throw ValidationError(os.str());
  }

  const Alphabet& src = gm.source();
  const Alphabet& tgt = gm.target();
  std::vector<YFrontier> fr;
  std::vector<std::vector<int>> offsets;
  std::vector<int> dims;
  for (Letter a = 0; a < tgt.size(); ++a) {
    fr.push_back(compute_Y(gm, tgt.word({a})));
    std::vector<int> off;
    int d = 0;
    for (const YMember& m : fr.back().members) {
      off.push_back(d);
      d += sys.dim(m.word.back());
    }
    offsets.push_back(std::move(off));
    dims.push_back(d);
  }

  MatrixSystem out(tgt, dims);
  for (Letter a = 0; a < tgt.size(); ++a) {
    Mat b = Mat::Zero(dims[a], dims[a]);
    for (std::size_t i = 0; i < fr[a].members.size(); ++i) {
      const Letter t = fr[a].members[i].word.back();
      b.block(offsets[a][i], offsets[a][i], sys.dim(t), sys.dim(t)) = sys.B(t);
    }
    out.set_B(a, b);
  }

  for (Letter a = 0; a < tgt.size(); ++a) {
    for (Letter b = 0; b < tgt.size(); ++b) {
      if (tgt.inverse(a) == b) continue;
      Mat h = Mat::Zero(dims[b], dims[a]);
      for (std::size_t i = 0; i < fr[b].members.size(); ++i) {
        const Word& z = fr[b].members[i].word;
        const Word az = src.multiply(gm.preimage(a), z);
        std::size_t hit = fr[a].members.size();
        for (std::size_t j = 0; j < fr[a].members.size(); ++j) {
          if (!Alphabet::cone_contains(fr[a].members[j].word, az)) continue;
          if (hit != fr[a].members.size()) throw InternalError("transport_system: two frontier prefixes");
          hit = j;
        }
        if (hit == fr[a].members.size()) {
          throw InternalError("transport_system: " + src.format(az) + " has no prefix in Y(" + tgt.name(a) + ")");
        }
        if (az.back() != z.back()) {
          throw InternalError("transport_system: last letters of " + src.format(z) + " and " +
                              src.format(az) + " differ");
        }
        const Word& w = fr[a].members[hit].word;
        Letter prev = w.back();
        Mat m = Mat::Identity(sys.dim(prev), sys.dim(prev));
        for (std::size_t k = w.size(); k < az.size(); ++k) {
          m = sys.H(az[k], prev) * m;
          prev = az[k];
        }
        h.block(offsets[b][i], offsets[a][hit], m.rows(), m.cols()) = m;
      }
      out.set_H(b, a, h);
    }
  }
  return Transported{std::make_shared<const MatrixSystem>(std::move(out)), std::move(fr),
                     std::move(offsets), gm};
}

MultFunc intertwine_changegen(const Transported& t, const MultFunc& f) {
  const GeneratorMap& gm = t.map;
  if (!(f.system().alphabet() == gm.source())) {
    throw InputError("intertwine_changegen: function is not over the source alphabet");
  }
  const Alphabet& src = gm.source();
  const Alphabet& tgt = gm.target();

  // Smallest depth at which every contract(x) z reaches depth(f).
  int depth = 1;
  for (;; ++depth) {
    if (depth > f.depth_cap()) throw ResourceError("intertwine_changegen: output depth exceeds the cap");
    bool ok = true;
    for (const Word& x : tgt.sphere(depth - 1)) {
      const Word cx = gm.contract(x);
      for (Letter a = 0; a < tgt.size() && ok; ++a) {
        if (!x.empty() && tgt.inverse(x.back()) == a) continue;
        for (const YMember& m : t.frontiers[a].members) {
          if (static_cast<int>(src.multiply(cx, m.word).size()) < f.depth()) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) break;
    }
    if (ok) break;
  }

  MultFunc out(t.system, depth, f.depth_cap());
  for (std::size_t i = 0; i < out.sphere_count(); ++i) {
    const Word xa = out.word_at(i);
    const Letter a = xa.back();
    const Word cx = gm.contract(tgt.drop_last(xa));
    Vec v = Vec::Zero(t.system->dim(a));
    const auto& members = t.frontiers[a].members;
    for (std::size_t j = 0; j < members.size(); ++j) {
      const Vec piece = evaluate(f, src.multiply(cx, members[j].word));
      v.segment(t.offsets[a][j], piece.size()) = piece;
    }
    out.set_value_at(i, std::move(v));
  }
  return out;
}

}  // namespace mrep
