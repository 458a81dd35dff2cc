#pragma once

#include <memory>
#include <vector>

#include "mrep/multfunc.hpp"
#include "mrep/subgroup.hpp"
#include "mrep/system.hpp"

namespace mrep {

// Restriction to the subgroup: V_{a'} = V_{q(a')}, B_{a'} = B_{q(a')}, and
// H_{b'a'} the product of H along the geodesic from x(a') to a'x(b').
// Throws ValidationError if the input is not compatible.
MatrixSystem restrict_system(const MatrixSystem& sys, const FundamentalSubtree& fs);

// (Uf)(y'a') = f(y' x(a')) on the restricted system `restricted`, at the
// smallest depth where every evaluation is at or beyond depth(f).
MultFunc restrict_function(std::shared_ptr<const MatrixSystem> restricted,
                           const FundamentalSubtree& fs, const MultFunc& f);

// P(a) = (D^{-1} A') intersected with C(a), as pairs (u, c') ordered by u
// (shortlex) and then by c'.
struct PEntry {
  Word u;
  Letter c;  // letter of A'
  Word word; // u^{-1} c' as an A-word
};
std::vector<std::vector<PEntry>> compute_P(const FundamentalSubtree& fs);

struct Induced {
  std::shared_ptr<const MatrixSystem> system;  // over A
  std::vector<std::vector<PEntry>> P;
  std::vector<std::vector<int>> offsets;  // block offsets inside V_a, parallel to P[a]
};

// V_a = sum over (u, c') in P(a) of V'_{c'}. The (v, d') row of H_ba copies the
// (va^{-1}, d') block when va^{-1} lies in D, and otherwise applies H'_{d'c'}
// to the (u, c') block where a v^{-1} = u^{-1} c'. Throws ValidationError if
// the input is not compatible and InternalError if the case split fails.
Induced induce_system(const MatrixSystem& sub_system, const FundamentalSubtree& fs);

// A function of the induced space, stored as the family fD(u) = f(u^{-1})
// indexed like fs.D().
using InducedFamily = std::vector<MultFunc>;

// (Uf)(xa) has (u, c')-block (pi'(g) fD(v))(c') = fD(v)(g^{-1} c') where
// u x^{-1} = g v with v in D.
MultFunc induce_function(const Induced& ind, const FundamentalSubtree& fs, const InducedFamily& family);

double family_norm2(const InducedFamily& family);

// The family of the left translate by x: fD'(u) = pi'(g) fD(v) where u x = g v.
InducedFamily translate_family(const FundamentalSubtree& fs, const InducedFamily& family, const Word& x);

struct Truncation {
  FiniteSubtree tree;           // over A'
  std::vector<Word> terminals;  // shortlex
};

// S'_0 = {g : gD meets z^{-1} B(e, N)} together with the first g' outside it.
// Requires N > |z| and B'(e, M) inside the result (ValidationError otherwise).
Truncation truncation_subtree(const FundamentalSubtree& fs, const Word& z, int N, int M = 0);

// {z^{-1} x y : |x| = N, |xa| = N + 1, y in P(a)} intersected with the
// subgroup, spelled over A', shortlex.
std::vector<Word> truncation_terminals_direct(const FundamentalSubtree& fs, const Word& z, int N);

}  // namespace mrep
