#include "mrep/folding.hpp"

#include <map>

#include "mrep/errors.hpp"

namespace mrep {

bool FoldedGraph::is_complete() const {
  for (const auto& row : next) {
    for (int t : row) {
      if (t < 0) return false;
    }
  }
  return true;
}

namespace {

struct Edge {
  int from;
  int to;
  Letter letter;
  Word label;
  bool alive = true;
};

struct End {
  int edge;
  bool forward;  // traversed from -> to
};

class Folder {
 public:
  Folder(const Alphabet& alphabet, const Alphabet& labels) : al_(alphabet), lab_(labels) {}

  void add_petal(const Word& path, const Word& label) {
    if (path.empty()) return;
    int cur = 0;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const int to = (k + 1 == path.size()) ? 0 : vertices_++;
      edges_.push_back(Edge{cur, to, path[k], k == 0 ? label : Word(), true});
      cur = to;
    }
  }

  FoldedGraph run() {
    while (fold_once()) {
    }
    return table();
  }

 private:
  Letter end_letter(const End& e) const {
    const Edge& ed = edges_[static_cast<std::size_t>(e.edge)];
    return e.forward ? ed.letter : al_.inverse(ed.letter);
  }
  int end_target(const End& e) const {
    const Edge& ed = edges_[static_cast<std::size_t>(e.edge)];
    return e.forward ? ed.to : ed.from;
  }
  Word end_label(const End& e) const {
    const Edge& ed = edges_[static_cast<std::size_t>(e.edge)];
    return e.forward ? ed.label : lab_.inverse(ed.label);
  }

  // Relabels so that every path through v reads the same word.
  void gauge(int v, const Word& c) {
    const Word cinv = lab_.inverse(c);
    for (Edge& e : edges_) {
      if (!e.alive) continue;
      if (e.from == v) e.label = lab_.multiply(c, e.label);
      if (e.to == v) e.label = lab_.multiply(e.label, cinv);
    }
  }

  bool fold_once() {
    std::map<std::pair<int, Letter>, End> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!edges_[i].alive) continue;
      for (bool fwd : {true, false}) {
        const End e{static_cast<int>(i), fwd};
        const int v = fwd ? edges_[i].from : edges_[i].to;
        auto [it, fresh] = seen.emplace(std::make_pair(v, end_letter(e)), e);
        if (!fresh) {
          fold(it->second, e);
          return true;
        }
      }
    }
    return false;
  }

  void fold(End e1, End e2) {
    int t1 = end_target(e1);
    int t2 = end_target(e2);
    if (t1 == t2) {
      if (end_label(e1) != end_label(e2)) {
        throw ValidationError("folding: two paths with the same letters carry different labels; "
                              "the words satisfy a relation");
      }
      edges_[static_cast<std::size_t>(e2.edge)].alive = false;
      return;
    }
    if (t2 == 0) {
      std::swap(e1, e2);
      std::swap(t1, t2);
    }
    const Word c = lab_.multiply(lab_.inverse(end_label(e1)), end_label(e2));
    gauge(t2, c);
    edges_[static_cast<std::size_t>(e2.edge)].alive = false;
    for (Edge& e : edges_) {
      if (!e.alive) continue;
      if (e.from == t2) e.from = t1;
      if (e.to == t2) e.to = t1;
    }
  }

  FoldedGraph table() const {
    std::map<int, int> renumber{{0, 0}};
    for (const Edge& e : edges_) {
      if (!e.alive) continue;
      for (int v : {e.from, e.to}) {
        if (!renumber.count(v)) {
          const int id = static_cast<int>(renumber.size());
          renumber[v] = id;
        }
      }
    }
    FoldedGraph g;
    g.vertex_count = static_cast<int>(renumber.size());
    g.next.assign(static_cast<std::size_t>(g.vertex_count),
                  std::vector<int>(static_cast<std::size_t>(al_.size()), -1));
    g.label.assign(static_cast<std::size_t>(g.vertex_count),
                   std::vector<Word>(static_cast<std::size_t>(al_.size())));
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!edges_[i].alive) continue;
      for (bool fwd : {true, false}) {
        const End e{static_cast<int>(i), fwd};
        const int v = renumber.at(fwd ? edges_[i].from : edges_[i].to);
        const Letter a = end_letter(e);
        g.next[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] = renumber.at(end_target(e));
        g.label[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] = end_label(e);
      }
    }
    return g;
  }

  const Alphabet& al_;
  const Alphabet& lab_;
  int vertices_ = 1;
  std::vector<Edge> edges_;
};

}  // namespace

FoldedGraph fold_petals(const Alphabet& alphabet, const std::vector<Word>& petals,
                        const Alphabet& label_alphabet, const std::vector<Word>& labels) {
  if (!labels.empty() && labels.size() != petals.size()) {
    throw InputError("folding: one label per petal is required");
  }
  Folder f(alphabet, label_alphabet);
  for (std::size_t i = 0; i < petals.size(); ++i) {
    if (!alphabet.is_reduced(petals[i])) throw InputError("folding: petal is not a reduced word");
    f.add_petal(petals[i], labels.empty() ? Word() : labels[i]);
  }
  return f.run();
}

}  // namespace mrep
