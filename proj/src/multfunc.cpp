#include "mrep/multfunc.hpp"

#include <algorithm>
#include <sstream>

#include "mrep/errors.hpp"

namespace mrep {

namespace {

void check_depth(const Alphabet& alphabet, int depth, int cap) {
  if (depth < 1) throw InputError("multiplicative function: depth must be at least 1");
  if (depth > cap || sphere_size(alphabet, depth) > kMaxSphereVertices) {
    std::ostringstream os;
    os << "multiplicative function: depth " << depth << " exceeds the cap (" << cap << " levels, "
       << kMaxSphereVertices << " sphere vertices)";
    throw ResourceError(os.str());
  }
}

double pair_norm(const Mat& b, const Vec& v) {
  if (v.size() == 0) return 0.0;
  return std::max(0.0, (v.adjoint() * b * v)(0, 0).real());
}

}  // namespace

MultFunc::MultFunc(std::shared_ptr<const MatrixSystem> sys, int depth, int depth_cap)
    : sys_(std::move(sys)), depth_(depth), cap_(depth_cap) {
  if (!sys_) throw InputError("multiplicative function: null system");
  check_depth(sys_->alphabet(), depth_, cap_);
  const std::size_t n = sphere_size(sys_->alphabet(), depth_);
  values_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) values_.push_back(Vec::Zero(sys_->dim(word_at(i).back())));
}

// Mixed radix: the first letter, then for each later letter its rank among
// the q letters other than the inverse of its predecessor. This is shortlex.
std::size_t MultFunc::index_of(const Word& x) const {
  if (static_cast<int>(x.size()) != depth_) throw InputError("multiplicative function: word not on the sphere");
  const Alphabet& al = sys_->alphabet();
  const std::size_t q = static_cast<std::size_t>(al.branching());
  std::size_t idx = static_cast<std::size_t>(x[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Letter forbidden = al.inverse(x[i - 1]);
    if (x[i] == forbidden) throw InputError("multiplicative function: word is not reduced");
    const std::size_t digit = static_cast<std::size_t>(x[i] > forbidden ? x[i] - 1 : x[i]);
    idx = idx * q + digit;
  }
  return idx;
}

Word MultFunc::word_at(std::size_t i) const {
  const Alphabet& al = sys_->alphabet();
  const std::size_t q = static_cast<std::size_t>(al.branching());
  std::vector<std::size_t> digits(static_cast<std::size_t>(depth_));
  for (int k = depth_ - 1; k >= 1; --k) {
    digits[static_cast<std::size_t>(k)] = i % q;
    i /= q;
  }
  digits[0] = i;
  std::vector<Letter> letters{static_cast<Letter>(digits[0])};
  for (std::size_t k = 1; k < digits.size(); ++k) {
    const Letter forbidden = al.inverse(letters.back());
    Letter l = static_cast<Letter>(digits[k]);
    if (l >= forbidden) ++l;
    letters.push_back(l);
  }
  return Word(std::move(letters));
}

void MultFunc::set_value(const Word& x, Vec v) { set_value_at(index_of(x), std::move(v)); }

void MultFunc::set_value_at(std::size_t i, Vec v) {
  if (v.size() != values_[i].size()) throw InputError("multiplicative function: vector has wrong dimension");
  values_[i] = std::move(v);
}

void require_same_system(const MultFunc& f, const MultFunc& g) {
  if (f.system_ptr() == g.system_ptr()) return;
  if (!(f.system().alphabet() == g.system().alphabet()) || f.system().dims() != g.system().dims()) {
    throw InputError("multiplicative functions live on different systems");
  }
}

MultFunc shadow(std::shared_ptr<const MatrixSystem> sys, const Word& x, const Vec& v, int depth_cap) {
  if (x.empty()) throw InputError("shadow: base must not be e");
  if (!sys->alphabet().is_reduced(x)) throw InputError("shadow: base is not reduced");
  if (v.size() != sys->dim(x.back())) throw InputError("shadow: vector has wrong dimension");
  MultFunc f(std::move(sys), static_cast<int>(x.size()), depth_cap);
  f.set_value(x, v);
  return f;
}

Vec evaluate(const MultFunc& f, const Word& y) {
  const int n = f.depth();
  if (static_cast<int>(y.size()) < n) throw InputError("evaluate: word is shorter than the depth");
  Word prefix(std::vector<Letter>(y.letters.begin(), y.letters.begin() + n));
  Vec v = f.value(prefix);
  const MatrixSystem& sys = f.system();
  for (std::size_t i = static_cast<std::size_t>(n); i < y.size(); ++i) {
    if (v.size() == 0) return Vec::Zero(sys.dim(y.back()));
    v = sys.H(y[i], y[i - 1]) * v;
  }
  return v;
}

MultFunc refine(const MultFunc& f, int depth) {
  if (depth < f.depth()) throw InputError("refine: target depth is below the current depth");
  if (depth == f.depth()) return f;
  MultFunc out(f.system_ptr(), depth, f.depth_cap());
  for (std::size_t i = 0; i < out.sphere_count(); ++i) out.set_value_at(i, evaluate(f, out.word_at(i)));
  return out;
}

MultFunc add(const MultFunc& f, const MultFunc& g) {
  require_same_system(f, g);
  const int n = std::max(f.depth(), g.depth());
  MultFunc a = refine(f, n);
  const MultFunc b = refine(g, n);
  for (std::size_t i = 0; i < a.sphere_count(); ++i) a.set_value_at(i, a.value_at(i) + b.value_at(i));
  return a;
}

MultFunc scale(const MultFunc& f, cplx s) {
  MultFunc out = f;
  for (std::size_t i = 0; i < out.sphere_count(); ++i) out.set_value_at(i, s * f.value_at(i));
  return out;
}

double max_difference(const MultFunc& f, const MultFunc& g) {
  require_same_system(f, g);
  const int n = std::max(f.depth(), g.depth());
  const MultFunc a = refine(f, n);
  const MultFunc b = refine(g, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.sphere_count(); ++i) {
    if (a.value_at(i).size() == 0) continue;
    worst = std::max(worst, (a.value_at(i) - b.value_at(i)).cwiseAbs().maxCoeff());
  }
  return worst;
}

cplx inner_product(const MultFunc& f, const MultFunc& g) {
  require_same_system(f, g);
  const int n = std::max(f.depth(), g.depth());
  const MultFunc a = refine(f, n);
  const MultFunc b = refine(g, n);
  const MatrixSystem& sys = f.system();
  cplx sum = 0.0;
  for (std::size_t i = 0; i < a.sphere_count(); ++i) {
    const Vec& u = a.value_at(i);
    if (u.size() == 0) continue;
    const Letter t = a.word_at(i).back();
    sum += (u.adjoint() * sys.B(t) * b.value_at(i))(0, 0);
  }
  return sum;
}

double norm2(const MultFunc& f) {
  const MatrixSystem& sys = f.system();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.sphere_count(); ++i) {
    const Vec& u = f.value_at(i);
    if (u.size() == 0) continue;
    sum += pair_norm(sys.B(f.word_at(i).back()), u);
  }
  return sum;
}

MultFunc act(const Word& x, const MultFunc& f) {
  const Alphabet& al = f.system().alphabet();
  if (!al.is_reduced(x)) throw InputError("act: word is not reduced");
  if (x.empty()) return f;
  const Word xinv = al.inverse(x);
  MultFunc out(f.system_ptr(), f.depth() + static_cast<int>(x.size()), f.depth_cap());
  for (std::size_t i = 0; i < out.sphere_count(); ++i) {
    out.set_value_at(i, evaluate(f, al.multiply(xinv, out.word_at(i))));
  }
  return out;
}

cplx matrix_coefficient(const Word& x, const MultFunc& f, const MultFunc& g) {
  return inner_product(act(x, f), g);
}

double norm_via_subtree(const MultFunc& f, const FiniteSubtree& tree) {
  if (!tree.is_complete()) throw ValidationError("norm_via_subtree: subtree is not complete");
  for (const Word& w : f.system().alphabet().ball_words(Word(), f.depth())) {
    if (!tree.contains(w)) throw ValidationError("norm_via_subtree: subtree does not contain the depth ball");
  }
  const MatrixSystem& sys = f.system();
  double sum = 0.0;
  for (const Word& t : tree.terminals()) sum += pair_norm(sys.B(t.back()), evaluate(f, t));
  return sum;
}

double based_terminal_norm(const MultFunc& f, const FiniteSubtree& tree) {
  const MatrixSystem& sys = f.system();
  double sum = 0.0;
  for (const Word& t : tree.based_terminals()) {
    if (static_cast<int>(t.size()) < f.depth()) {
      throw ValidationError("based_terminal_norm: terminal lies inside the depth ball");
    }
    sum += pair_norm(sys.B(t.back()), evaluate(f, t));
  }
  return sum;
}

std::vector<std::pair<Word, Vec>> shadow_terms(const MultFunc& f) {
  std::vector<std::pair<Word, Vec>> out;
  for (std::size_t i = 0; i < f.sphere_count(); ++i) {
    const Vec& v = f.value_at(i);
    if (v.size() == 0 || v.isZero(0.0)) continue;
    out.emplace_back(f.word_at(i), v);
  }
  return out;
}

}  // namespace mrep
