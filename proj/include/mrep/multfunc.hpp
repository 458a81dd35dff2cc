#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "mrep/system.hpp"

namespace mrep {

inline constexpr int kDefaultDepthCap = 12;
// Hard ceiling on stored sphere vertices, independent of the depth cap, so
// that larger alphabets fail fast instead of exhausting memory.
inline constexpr std::size_t kMaxSphereVertices = std::size_t{1} << 21;

// A multiplicative function stored by its values on the sphere |x| = depth.
// Beyond that sphere it is extended by f(xb) = H(b, t(x)) f(x).
class MultFunc {
 public:
  MultFunc(std::shared_ptr<const MatrixSystem> sys, int depth, int depth_cap = kDefaultDepthCap);
  MultFunc(const MatrixSystem& sys, int depth, int depth_cap = kDefaultDepthCap)
      : MultFunc(std::make_shared<const MatrixSystem>(sys), depth, depth_cap) {}

  const MatrixSystem& system() const { return *sys_; }
  const std::shared_ptr<const MatrixSystem>& system_ptr() const { return sys_; }
  int depth() const { return depth_; }
  int depth_cap() const { return cap_; }

  // Sphere vertices are indexed in shortlex order.
  std::size_t sphere_count() const { return values_.size(); }
  std::size_t index_of(const Word& x) const;
  Word word_at(std::size_t i) const;

  const Vec& value_at(std::size_t i) const { return values_[i]; }
  const Vec& value(const Word& x) const { return values_[index_of(x)]; }
  void set_value(const Word& x, Vec v);
  void set_value_at(std::size_t i, Vec v);

 private:
  std::shared_ptr<const MatrixSystem> sys_;
  int depth_;
  int cap_;
  std::vector<Vec> values_;
};

// Throws InputError unless f and g live on the same alphabet and dimensions.
void require_same_system(const MultFunc& f, const MultFunc& g);

// mu[x, v]: depth |x|, value v at x, zero elsewhere.
MultFunc shadow(std::shared_ptr<const MatrixSystem> sys, const Word& x, const Vec& v,
                int depth_cap = kDefaultDepthCap);

// f(y) for |y| >= depth(f).
Vec evaluate(const MultFunc& f, const Word& y);

MultFunc refine(const MultFunc& f, int depth);

// Values on the sphere of the common depth, refined as needed.
MultFunc add(const MultFunc& f, const MultFunc& g);
MultFunc scale(const MultFunc& f, cplx s);
double max_difference(const MultFunc& f, const MultFunc& g);  // sup-norm at common depth

// sum_{|x| = N} B_{t(x)}(f(x), g(x)), N the common depth; antilinear in f.
cplx inner_product(const MultFunc& f, const MultFunc& g);
double norm2(const MultFunc& f);

// (pi(x) f)(z) = f(x^{-1} z), stored at depth N(f) + |x|.
MultFunc act(const Word& x, const MultFunc& f);
cplx matrix_coefficient(const Word& x, const MultFunc& f, const MultFunc& g);

// sum over the terminal vertices of a complete subtree containing ball(e, N(f)).
double norm_via_subtree(const MultFunc& f, const FiniteSubtree& tree);
// sum over T_e of a complete subtree based at x_e, e not interior; used for the
// local identity of shadows based at x_e.
double based_terminal_norm(const MultFunc& f, const FiniteSubtree& tree);

// Nonzero sphere values as shadows; their sum reproduces f.
std::vector<std::pair<Word, Vec>> shadow_terms(const MultFunc& f);

}  // namespace mrep
