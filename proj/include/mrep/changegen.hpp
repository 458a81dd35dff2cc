#pragma once

#include <memory>
#include <vector>

#include "mrep/multfunc.hpp"
#include "mrep/system.hpp"

namespace mrep {

// A free basis A' of the group written in the letters of A. The source tree
// is the Cayley tree of A'; its vertices are A'-words.
class GeneratorMap {
 public:
  // images[alpha] is the A-word of the source letter alpha. Validates the
  // involution, that the images freely generate the whole group (by folding)
  // and computes the inverse map on A.
  GeneratorMap(Alphabet source, Alphabet target, std::vector<Word> images);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const Word& image(Letter alpha) const { return images_[alpha]; }
  // The A'-word of a single target letter.
  const Word& preimage(Letter a) const { return preimages_[a]; }

  Word expand(const Word& source_word) const;
  Word contract(const Word& target_word) const;

  int source_stretch() const { return source_stretch_; }  // max |alpha| in A
  int target_stretch() const { return target_stretch_; }  // max |a|' in A'
  int contract_length_bound(const Word& target_word) const {
    return target_stretch_ * static_cast<int>(target_word.size());
  }

  // C'(y) contained in C(z), decided exactly: the expansion of C'(y) spans a
  // subtree of the target tree that enters C(z) only through the edge from z
  // to its parent.
  bool cone_included(const Word& y, const Word& z) const;
  bool cone_intersects(const Word& y, const Word& z) const;

 private:
  // Whether p lies on the expansion of an edge of the source tree inside C'(y).
  bool spans(const Word& y, const Word& p) const;

  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
  std::vector<Word> preimages_;
  int source_stretch_ = 0;
  int target_stretch_ = 0;
};

struct YMember {
  Word word;      // source word
  bool y1 = false;  // C'(word) lies in C(zb) for some b
};

struct YFrontier {
  Word z;
  std::vector<YMember> members;  // shortlex order

  std::vector<Word> words() const;
};

// First-inclusion frontier of C(z) in the source tree.
YFrontier compute_Y(const GeneratorMap& gm, const Word& z);

// The complete subtree {w-bar} + interior + first vertices of C'(w) whose cone
// falls in some C(ab), for w tagged Y0 in Y(a).
FiniteSubtree pruned_subtree(const GeneratorMap& gm, const Word& w, Letter a);

struct Transported {
  std::shared_ptr<const MatrixSystem> system;  // over the target alphabet
  std::vector<YFrontier> frontiers;            // Y(a) per target letter
  std::vector<std::vector<int>> offsets;       // block offsets inside V_a
  GeneratorMap map;
};

// V_a = sum over z in Y(a) of V'_{t(z)}; H_ba assembled block by block from
// the paths between frontier members. Throws ValidationError if the input
// is not compatible.
Transported transport_system(const GeneratorMap& gm, const MatrixSystem& source_system);

// (Uf)(xa) has z-block f(contract(x) z) for z in Y(a). The output depth is
// the smallest one at which every evaluation is at or beyond depth(f).
MultFunc intertwine_changegen(const Transported& t, const MultFunc& f);

}  // namespace mrep
