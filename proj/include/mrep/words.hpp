#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mrep {

using Letter = int;

// A freely reduced word, stored as letter indices into an Alphabet.
// Ordering is shortlex (length first, then letter index).
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }
  Letter back() const { return letters.back(); }

  bool operator==(const Word&) const = default;
  std::strong_ordering operator<=>(const Word& o) const {
    if (auto c = letters.size() <=> o.letters.size(); c != 0) return c;
    return letters <=> o.letters;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

class FiniteSubtree;

// Symmetric generating set with a fixed-point-free involution.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> names, std::vector<Letter> inverse);

  // Pairs each name with its case-swapped counterpart ("a" <-> "A").
  static Alphabet with_case_convention(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  // Tree degree minus one: each vertex has size() neighbours.
  int branching() const { return size() - 1; }

  Letter inverse(Letter a) const { return inverse_[a]; }
  const std::string& name(Letter a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Letter> find(std::string_view name) const;
  Letter letter(std::string_view name) const;

  bool operator==(const Alphabet& o) const {
    return names_ == o.names_ && inverse_ == o.inverse_;
  }

  Word reduce(std::span<const Letter> seq) const;
  bool is_reduced(const Word& w) const;
  Word word(std::initializer_list<Letter> seq) const {
    return reduce(std::span<const Letter>(seq.begin(), seq.size()));
  }
  // Greedy longest-match tokenisation of a concatenation of letter names.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  Word multiply(const Word& x, const Word& y) const;
  Word multiply(const Word& x, const Word& y, const Word& z) const {
    return multiply(multiply(x, y), z);
  }
  Word inverse(const Word& x) const;
  Word append(const Word& x, Letter a) const;
  Letter last_letter(const Word& x) const;
  Word drop_last(const Word& x) const;
  int distance(const Word& x, const Word& y) const;

  // y in C(z): z is a prefix of y.
  static bool cone_contains(const Word& z, const Word& y);
  // x C(y) as a cone: returns xy when y is not on [e, x^{-1}], nullopt otherwise.
  std::optional<Word> translate_cone(const Word& x, const Word& y) const;

  std::vector<Word> geodesic(const Word& x, const Word& y) const;
  std::vector<Word> neighbours(const Word& x) const;
  // Neighbours farther from e than x.
  std::vector<Word> children(const Word& x) const;
  std::vector<Word> sphere(int radius) const;
  std::vector<Word> ball_words(const Word& center, int radius) const;
  FiniteSubtree ball(const Word& center, int radius) const;

 private:
  void check_letter(Letter a) const;

  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
  std::unordered_map<std::string, Letter> index_;
};

// Finite connected set of tree vertices.
class FiniteSubtree {
 public:
  FiniteSubtree(Alphabet alphabet, std::vector<Word> vertices);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::set<Word>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(const Word& w) const { return vertices_.count(w) > 0; }
  int relative_degree(const Word& w) const;
  bool is_complete() const;
  std::vector<Word> terminals() const;
  std::vector<Word> interior() const;

  struct Base {
    Word nearest;  // vertex closest to e (a terminal)
    Word root;     // its unique neighbour in the subtree
  };
  // Requires complete, at least two vertices, e not interior.
  Base based_root() const;
  // Terminals other than the nearest one.
  std::vector<Word> based_terminals() const;

 private:
  Alphabet alphabet_;
  std::set<Word> vertices_;
};

// Validates completeness; throws ValidationError otherwise.
FiniteSubtree complete_subtree_of(const Alphabet& alphabet, std::vector<Word> vertices);

// Number of vertices on the sphere of given radius in the tree of the alphabet.
std::size_t sphere_size(const Alphabet& alphabet, int radius);

}  // namespace mrep
