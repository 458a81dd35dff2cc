#pragma once

#include <vector>

#include "mrep/words.hpp"

namespace mrep {

// Result of folding a bouquet of closed paths at a base vertex.
// next[v][a] is the target of the a-edge at v (or -1); label[v][a] is the
// label read along that edge, a word over the label alphabet.
struct FoldedGraph {
  int vertex_count = 0;
  int base = 0;
  std::vector<std::vector<int>> next;
  std::vector<std::vector<Word>> label;

  bool is_complete() const;
};

// Stallings folding of the petals (each a reduced word read from the base).
// labels[i] is attached to the first edge of petal i, so a closed path at
// the base reads the product of the labels of the petals it traverses. Two
// folded edges with conflicting labels mean the petals satisfy a relation;
// that raises ValidationError. Pass an empty labels vector to ignore labels.
FoldedGraph fold_petals(const Alphabet& alphabet, const std::vector<Word>& petals,
                        const Alphabet& label_alphabet, const std::vector<Word>& labels);

}  // namespace mrep
