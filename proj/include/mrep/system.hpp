#pragma once

#include <vector>

#include "mrep/linalg.hpp"
#include "mrep/words.hpp"

namespace mrep {

// Spaces V_a, transfer maps H(b,a): V_a -> V_b (zero when ab = e) and
// Hermitian forms B_a with B_a(v,w) = v^* B_a w.
class MatrixSystem {
 public:
  MatrixSystem() = default;
  MatrixSystem(Alphabet alphabet, std::vector<int> dims);

  const Alphabet& alphabet() const { return alphabet_; }
  int letters() const { return alphabet_.size(); }
  int dim(Letter a) const { return dims_[a]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const;

  const Mat& H(Letter b, Letter a) const { return H_[index(b, a)]; }
  void set_H(Letter b, Letter a, Mat m);
  const Mat& B(Letter a) const { return B_[a]; }
  void set_B(Letter a, Mat m);
  const std::vector<Mat>& forms() const { return B_; }
  void set_forms(std::vector<Mat> forms);

  // Shapes, the zero rule for ab = e, Hermitian and PSD forms.
  void validate() const;

 private:
  std::size_t index(Letter b, Letter a) const {
    return static_cast<std::size_t>(b) * dims_.size() + static_cast<std::size_t>(a);
  }

  Alphabet alphabet_;
  std::vector<int> dims_;
  std::vector<Mat> H_;
  std::vector<Mat> B_;
};

// Per-letter orthonormal bases of subspaces W_a of V_a.
struct Subsystem {
  std::vector<Mat> basis;

  std::vector<int> dims() const;
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
};

// Per-letter linear maps J_a: V_a -> V'_a.
struct SystemMap {
  std::vector<Mat> J;
};

double compatibility_defect(const MatrixSystem& sys);

Subsystem zero_subsystem(const MatrixSystem& sys);
Subsystem full_subsystem(const MatrixSystem& sys);
// Orthonormalises arbitrary spanning sets.
Subsystem make_subsystem(const MatrixSystem& sys, const std::vector<Mat>& spanning);
bool is_full(const MatrixSystem& sys, const Subsystem& w);

// max over (b,a) of |(I - P_{W_b}) H(b,a) W_a| / max(1, |H(b,a)|).
double invariance_residual(const MatrixSystem& sys, const Subsystem& w);
bool is_invariant_subsystem(const MatrixSystem& sys, const Subsystem& w,
                            double tol = kRankTol);

// (W, H|W, B|W) in the coordinates of the stored bases.
MatrixSystem restrict_to(const MatrixSystem& sys, const Subsystem& w);

// Quotient realised on the orthogonal complements of W. The forms are the
// compressions of B to those complements. Throws if W is not invariant.
struct Quotient {
  MatrixSystem system;
  Subsystem complement;  // orthonormal bases of W_a^perp, i.e. the quotient coordinates
};
Quotient quotient_system(const MatrixSystem& sys, const Subsystem& w);

// Dual system: H'(a,b) = H(b,a)^*, forms set to the identity.
MatrixSystem adjoint_system(const MatrixSystem& sys);

// Orthogonal complement of each W_a.
Subsystem annihilator(const MatrixSystem& sys, const Subsystem& w);

MatrixSystem direct_sum(const MatrixSystem& s1, const MatrixSystem& s2);
// H'(b,a) = U_b H(b,a) U_a^{-1}, B'_a = U_a^{-*} B_a U_a^{-1}; U_a unitary.
MatrixSystem conjugate(const MatrixSystem& sys, const SystemMap& u);
MatrixSystem scale_transfer(const MatrixSystem& sys, cplx t);

// max over (a,b) of |H'(a,b) J_b - J_a H(a,b)|.
double map_residual(const MatrixSystem& from, const MatrixSystem& to, const SystemMap& j);
SystemMap identity_map(const MatrixSystem& sys);

// All dims 1, H(b,a) = h for ab != e, B_a = b.
MatrixSystem scalar_system(const Alphabet& alphabet, cplx h, double b);
// Scalar system with h = q^{-1/2 + i s}, B = 1/|A|; compatible for every real s.
MatrixSystem spherical_system(const Alphabet& alphabet, double s);

}  // namespace mrep
