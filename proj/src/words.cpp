#include "mrep/words.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "mrep/errors.hpp"

namespace mrep {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter a : w.letters) {
    h ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Alphabet::Alphabet(std::vector<std::string> names, std::vector<Letter> inverse)
    : names_(std::move(names)), inverse_(std::move(inverse)) {
  const int n = static_cast<int>(names_.size());
  if (static_cast<int>(inverse_.size()) != n) {
    throw InputError("alphabet: involution table size does not match letter count");
  }
  if (n < 4 || n % 2 != 0) {
    throw InputError("alphabet: need an even number of letters, at least 4");
  }
  for (int a = 0; a < n; ++a) {
    if (names_[a].empty()) throw InputError("alphabet: empty letter name");
    if (!index_.emplace(names_[a], a).second) {
      throw InputError("alphabet: duplicate letter '" + names_[a] + "'");
    }
    const Letter b = inverse_[a];
    if (b < 0 || b >= n) throw InputError("alphabet: involution out of range");
    if (b == a) throw InputError("alphabet: involution has a fixed point at '" + names_[a] + "'");
  }
  for (int a = 0; a < n; ++a) {
    if (inverse_[inverse_[a]] != a) throw InputError("alphabet: involution is not of order 2");
  }
}

Alphabet Alphabet::with_case_convention(std::vector<std::string> names) {
  std::unordered_map<std::string, Letter> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<Letter>(i);
  std::vector<Letter> inv(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string swapped = names[i];
    for (char& c : swapped) {
      unsigned char u = static_cast<unsigned char>(c);
      c = std::islower(u) ? static_cast<char>(std::toupper(u)) : static_cast<char>(std::tolower(u));
    }
    auto it = idx.find(swapped);
    if (it == idx.end() || swapped == names[i]) {
      throw InputError("alphabet: no case-swapped inverse for '" + names[i] + "'");
    }
    inv[i] = it->second;
  }
  return Alphabet(std::move(names), std::move(inv));
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::letter(std::string_view name) const {
  auto a = find(name);
  if (!a) throw InputError("unknown letter '" + std::string(name) + "'");
  return *a;
}

void Alphabet::check_letter(Letter a) const {
  if (a < 0 || a >= size()) throw InputError("letter index out of range for alphabet");
}

Word Alphabet::reduce(std::span<const Letter> seq) const {
  std::vector<Letter> out;
  out.reserve(seq.size());
  for (Letter a : seq) {
    check_letter(a);
    if (!out.empty() && inverse_[out.back()] == a) {
      out.pop_back();
    } else {
      out.push_back(a);
    }
  }
  return Word(std::move(out));
}

bool Alphabet::is_reduced(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= size()) return false;
    if (i > 0 && inverse_[w[i - 1]] == w[i]) return false;
  }
  return true;
}

Word Alphabet::parse(std::string_view text) const {
  if (text == "e" && !find("e")) return Word();
  std::vector<Letter> seq;
  std::size_t pos = 0;
  std::size_t longest = 0;
  for (const auto& n : names_) longest = std::max(longest, n.size());
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '.') {
      ++pos;
      continue;
    }
    bool matched = false;
    for (std::size_t len = std::min(longest, text.size() - pos); len > 0; --len) {
      if (auto a = find(text.substr(pos, len))) {
        seq.push_back(*a);
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw InputError("cannot parse word '" + std::string(text) + "' at position " +
                       std::to_string(pos));
    }
  }
  return reduce(seq);
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "e";
  bool single = std::all_of(names_.begin(), names_.end(),
                            [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += '.';
    out += names_[w[i]];
  }
  return out;
}

Word Alphabet::multiply(const Word& x, const Word& y) const {
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && inverse_[x[x.size() - 1 - k]] == y[k]) ++k;
  std::vector<Letter> out(x.letters.begin(), x.letters.end() - static_cast<long>(k));
  out.insert(out.end(), y.letters.begin() + static_cast<long>(k), y.letters.end());
  return Word(std::move(out));
}

Word Alphabet::inverse(const Word& x) const {
  std::vector<Letter> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = inverse_[x[x.size() - 1 - i]];
  return Word(std::move(out));
}

Word Alphabet::append(const Word& x, Letter a) const {
  check_letter(a);
  Word out = x;
  if (!out.empty() && inverse_[out.back()] == a) {
    out.letters.pop_back();
  } else {
    out.letters.push_back(a);
  }
  return out;
}

Letter Alphabet::last_letter(const Word& x) const {
  if (x.empty()) throw ValidationError("last_letter: identity has no last letter");
  return x.back();
}

Word Alphabet::drop_last(const Word& x) const {
  if (x.empty()) throw ValidationError("drop_last: identity has no last letter");
  return Word(std::vector<Letter>(x.letters.begin(), x.letters.end() - 1));
}

int Alphabet::distance(const Word& x, const Word& y) const {
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  return static_cast<int>(x.size() + y.size() - 2 * k);
}

bool Alphabet::cone_contains(const Word& z, const Word& y) {
  if (z.size() > y.size()) return false;
  return std::equal(z.letters.begin(), z.letters.end(), y.letters.begin());
}

std::optional<Word> Alphabet::translate_cone(const Word& x, const Word& y) const {
  // y lies on [e, x^{-1}] exactly when y is a prefix of x^{-1}.
  if (cone_contains(y, inverse(x))) return std::nullopt;
  return multiply(x, y);
}

std::vector<Word> Alphabet::geodesic(const Word& x, const Word& y) const {
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  std::vector<Word> path;
  Word cur = x;
  path.push_back(cur);
  while (cur.size() > k) {
    cur.letters.pop_back();
    path.push_back(cur);
  }
  for (std::size_t i = k; i < y.size(); ++i) {
    cur.letters.push_back(y[i]);
    path.push_back(cur);
  }
  return path;
}

std::vector<Word> Alphabet::neighbours(const Word& x) const {
  std::vector<Word> out;
  out.reserve(names_.size());
  for (Letter a = 0; a < size(); ++a) out.push_back(append(x, a));
  return out;
}

std::vector<Word> Alphabet::children(const Word& x) const {
  std::vector<Word> out;
  for (Letter a = 0; a < size(); ++a) {
    if (!x.empty() && inverse_[x.back()] == a) continue;
    Word c = x;
    c.letters.push_back(a);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Word> Alphabet::sphere(int radius) const {
  std::vector<Word> level{Word()};
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    next.reserve(level.size() * static_cast<std::size_t>(size()));
    for (const Word& w : level) {
      for (Word& c : children(w)) next.push_back(std::move(c));
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Word> Alphabet::ball_words(const Word& center, int radius) const {
  std::vector<Word> out;
  for (int r = 0; r <= radius; ++r) {
    for (const Word& s : sphere(r)) out.push_back(multiply(center, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteSubtree Alphabet::ball(const Word& center, int radius) const {
  return FiniteSubtree(*this, ball_words(center, radius));
}

std::size_t sphere_size(const Alphabet& alphabet, int radius) {
  if (radius == 0) return 1;
  std::size_t n = static_cast<std::size_t>(alphabet.size());
  for (int r = 1; r < radius; ++r) n *= static_cast<std::size_t>(alphabet.branching());
  return n;
}

FiniteSubtree::FiniteSubtree(Alphabet alphabet, std::vector<Word> vertices)
    : alphabet_(std::move(alphabet)), vertices_(vertices.begin(), vertices.end()) {
  if (vertices_.empty()) throw ValidationError("subtree: empty vertex set");
  for (const Word& w : vertices_) {
    if (!alphabet_.is_reduced(w)) throw InputError("subtree: vertex is not a reduced word");
  }
  std::set<Word> seen{*vertices_.begin()};
  std::deque<Word> queue{*vertices_.begin()};
  while (!queue.empty()) {
    Word w = queue.front();
    queue.pop_front();
    for (Word& n : alphabet_.neighbours(w)) {
      if (vertices_.count(n) && seen.insert(n).second) queue.push_back(std::move(n));
    }
  }
  if (seen.size() != vertices_.size()) throw ValidationError("subtree: vertex set is not connected");
}

int FiniteSubtree::relative_degree(const Word& w) const {
  int d = 0;
  for (const Word& n : alphabet_.neighbours(w)) d += contains(n) ? 1 : 0;
  return d;
}

bool FiniteSubtree::is_complete() const {
  for (const Word& w : vertices_) {
    int d = relative_degree(w);
    if (d != 1 && d != alphabet_.size()) return false;
  }
  return true;
}

std::vector<Word> FiniteSubtree::terminals() const {
  std::vector<Word> out;
  for (const Word& w : vertices_) {
    if (relative_degree(w) <= 1) out.push_back(w);
  }
  return out;
}

std::vector<Word> FiniteSubtree::interior() const {
  std::vector<Word> out;
  for (const Word& w : vertices_) {
    if (relative_degree(w) > 1) out.push_back(w);
  }
  return out;
}

FiniteSubtree::Base FiniteSubtree::based_root() const {
  if (vertices_.size() < 2) throw ValidationError("based_root: subtree is elementary");
  if (!is_complete()) throw ValidationError("based_root: subtree is not complete");
  if (contains(Word()) && relative_degree(Word()) > 1) {
    throw ValidationError("based_root: e is an interior vertex");
  }
  // The vertex nearest e is the shortest one; uniqueness follows from convexity.
  const Word& nearest = *vertices_.begin();
  for (const Word& n : alphabet_.neighbours(nearest)) {
    if (contains(n)) return Base{nearest, n};
  }
  throw InternalError("based_root: nearest vertex has no neighbour");
}

std::vector<Word> FiniteSubtree::based_terminals() const {
  Base b = based_root();
  std::vector<Word> out;
  for (const Word& t : terminals()) {
    if (t != b.nearest) out.push_back(t);
  }
  return out;
}

FiniteSubtree complete_subtree_of(const Alphabet& alphabet, std::vector<Word> vertices) {
  FiniteSubtree t(alphabet, std::move(vertices));
  if (!t.is_complete()) throw ValidationError("subtree is not complete");
  return t;
}

}  // namespace mrep
