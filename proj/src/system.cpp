#include "mrep/system.hpp"

#include <algorithm>
#include <cmath>

#include "mrep/errors.hpp"

namespace mrep {

MatrixSystem::MatrixSystem(Alphabet alphabet, std::vector<int> dims)
    : alphabet_(std::move(alphabet)), dims_(std::move(dims)) {
  const int n = alphabet_.size();
  if (static_cast<int>(dims_.size()) != n) throw InputError("system: dims size != alphabet size");
  for (int d : dims_) {
    if (d < 0) throw InputError("system: negative dimension");
  }
  H_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (Letter b = 0; b < n; ++b) {
    for (Letter a = 0; a < n; ++a) H_[index(b, a)] = Mat::Zero(dims_[b], dims_[a]);
  }
  B_.resize(static_cast<std::size_t>(n));
  for (Letter a = 0; a < n; ++a) B_[a] = Mat::Zero(dims_[a], dims_[a]);
}

int MatrixSystem::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

void MatrixSystem::set_H(Letter b, Letter a, Mat m) {
  if (m.rows() != dims_[b] || m.cols() != dims_[a]) {
    throw InputError("system: H(" + alphabet_.name(b) + "|" + alphabet_.name(a) +
                     ") has wrong shape");
  }
  if (alphabet_.inverse(a) == b && m.size() > 0 && m.norm() != 0.0) {
    throw InputError("system: H(" + alphabet_.name(b) + "|" + alphabet_.name(a) +
                     ") must vanish since ab = e");
  }
  H_[index(b, a)] = std::move(m);
}

void MatrixSystem::set_B(Letter a, Mat m) {
  if (m.rows() != dims_[a] || m.cols() != dims_[a]) {
    throw InputError("system: B(" + alphabet_.name(a) + ") has wrong shape");
  }
  B_[a] = std::move(m);
}

void MatrixSystem::set_forms(std::vector<Mat> forms) {
  if (forms.size() != B_.size()) throw InputError("system: form tuple has wrong length");
  for (Letter a = 0; a < letters(); ++a) set_B(a, std::move(forms[a]));
}

void MatrixSystem::validate() const {
  for (Letter a = 0; a < letters(); ++a) {
    const Mat& b = B_[a];
    if (b.size() == 0) continue;
    const double scale = std::max(1.0, spectral_norm(b));
    if ((b - b.adjoint()).norm() > kDefectTol * scale) {
      throw ValidationError("system: B(" + alphabet_.name(a) + ") is not Hermitian");
    }
    if (!is_psd(b)) {
      throw ValidationError("system: B(" + alphabet_.name(a) + ") is not positive semi-definite");
    }
  }
}

std::vector<int> Subsystem::dims() const {
  std::vector<int> d;
  for (const Mat& m : basis) d.push_back(static_cast<int>(m.cols()));
  return d;
}

int Subsystem::total_dim() const {
  int t = 0;
  for (const Mat& m : basis) t += static_cast<int>(m.cols());
  return t;
}

double compatibility_defect(const MatrixSystem& sys) {
  double worst = 0.0;
  for (Letter a = 0; a < sys.letters(); ++a) {
    Mat acc = sys.B(a);
    for (Letter b = 0; b < sys.letters(); ++b) {
      const Mat& h = sys.H(b, a);
      acc -= h.adjoint() * sys.B(b) * h;
    }
    worst = std::max(worst, spectral_norm(acc));
  }
  return worst;
}

Subsystem zero_subsystem(const MatrixSystem& sys) {
  Subsystem w;
  for (Letter a = 0; a < sys.letters(); ++a) w.basis.push_back(Mat(sys.dim(a), 0));
  return w;
}

Subsystem full_subsystem(const MatrixSystem& sys) {
  Subsystem w;
  for (Letter a = 0; a < sys.letters(); ++a) w.basis.push_back(Mat::Identity(sys.dim(a), sys.dim(a)));
  return w;
}

Subsystem make_subsystem(const MatrixSystem& sys, const std::vector<Mat>& spanning) {
  if (static_cast<int>(spanning.size()) != sys.letters()) {
    throw InputError("subsystem: wrong number of letters");
  }
  Subsystem w;
  for (Letter a = 0; a < sys.letters(); ++a) {
    if (spanning[a].rows() != sys.dim(a)) throw InputError("subsystem: vector length mismatch");
    w.basis.push_back(orth(spanning[a]));
  }
  return w;
}

bool is_full(const MatrixSystem& sys, const Subsystem& w) {
  for (Letter a = 0; a < sys.letters(); ++a) {
    if (w.basis[a].cols() != sys.dim(a)) return false;
  }
  return true;
}

double invariance_residual(const MatrixSystem& sys, const Subsystem& w) {
  double worst = 0.0;
  for (Letter a = 0; a < sys.letters(); ++a) {
    if (w.basis[a].cols() == 0) continue;
    for (Letter b = 0; b < sys.letters(); ++b) {
      const Mat& h = sys.H(b, a);
      if (h.size() == 0) continue;
      const double scale = std::max(1.0, spectral_norm(h));
      worst = std::max(worst, span_residual(h * w.basis[a], w.basis[b]) / scale);
    }
  }
  return worst;
}

bool is_invariant_subsystem(const MatrixSystem& sys, const Subsystem& w, double tol) {
  return invariance_residual(sys, w) <= tol;
}

MatrixSystem restrict_to(const MatrixSystem& sys, const Subsystem& w) {
  MatrixSystem out(sys.alphabet(), w.dims());
  for (Letter a = 0; a < sys.letters(); ++a) {
    const Mat& wa = w.basis[a];
    out.set_B(a, hermitian_part(wa.adjoint() * sys.B(a) * wa));
    for (Letter b = 0; b < sys.letters(); ++b) {
      if (sys.alphabet().inverse(a) == b) continue;
      out.set_H(b, a, w.basis[b].adjoint() * sys.H(b, a) * wa);
    }
  }
  return out;
}

Subsystem annihilator(const MatrixSystem& sys, const Subsystem& w) {
  Subsystem out;
  for (Letter a = 0; a < sys.letters(); ++a) {
    out.basis.push_back(orth_complement(w.basis[a], sys.dim(a)));
  }
  return out;
}

Quotient quotient_system(const MatrixSystem& sys, const Subsystem& w) {
  if (!is_invariant_subsystem(sys, w)) {
    throw ValidationError("quotient_system: subsystem is not invariant");
  }
  Subsystem comp = annihilator(sys, w);
  // On W^perp the induced map is the compression P_{W^perp} H.
  return Quotient{restrict_to(sys, comp), comp};
}

MatrixSystem adjoint_system(const MatrixSystem& sys) {
  MatrixSystem out(sys.alphabet(), sys.dims());
  for (Letter a = 0; a < sys.letters(); ++a) {
    out.set_B(a, Mat::Identity(sys.dim(a), sys.dim(a)));
    for (Letter b = 0; b < sys.letters(); ++b) {
      if (sys.alphabet().inverse(a) == b) continue;
      out.set_H(a, b, sys.H(b, a).adjoint());
    }
  }
  return out;
}

MatrixSystem direct_sum(const MatrixSystem& s1, const MatrixSystem& s2) {
  if (!(s1.alphabet() == s2.alphabet())) throw InputError("direct_sum: alphabet mismatch");
  std::vector<int> dims;
  for (Letter a = 0; a < s1.letters(); ++a) dims.push_back(s1.dim(a) + s2.dim(a));
  MatrixSystem out(s1.alphabet(), dims);
  for (Letter a = 0; a < s1.letters(); ++a) {
    Mat b = Mat::Zero(dims[a], dims[a]);
    b.topLeftCorner(s1.dim(a), s1.dim(a)) = s1.B(a);
    b.bottomRightCorner(s2.dim(a), s2.dim(a)) = s2.B(a);
    out.set_B(a, b);
    for (Letter c = 0; c < s1.letters(); ++c) {
      if (s1.alphabet().inverse(a) == c) continue;
      Mat h = Mat::Zero(dims[c], dims[a]);
      h.topLeftCorner(s1.dim(c), s1.dim(a)) = s1.H(c, a);
      h.bottomRightCorner(s2.dim(c), s2.dim(a)) = s2.H(c, a);
      out.set_H(c, a, h);
    }
  }
  return out;
}

MatrixSystem conjugate(const MatrixSystem& sys, const SystemMap& u) {
  if (static_cast<int>(u.J.size()) != sys.letters()) throw InputError("conjugate: wrong map size");
  MatrixSystem out(sys.alphabet(), sys.dims());
  for (Letter a = 0; a < sys.letters(); ++a) {
    const Mat& ua = u.J[a];
    if (ua.rows() != sys.dim(a) || ua.cols() != sys.dim(a)) {
      throw InputError("conjugate: map has wrong shape");
    }
    out.set_B(a, hermitian_part(ua * sys.B(a) * ua.adjoint()));
    for (Letter b = 0; b < sys.letters(); ++b) {
      if (sys.alphabet().inverse(a) == b) continue;
      out.set_H(b, a, u.J[b] * sys.H(b, a) * ua.adjoint());
    }
  }
  return out;
}

MatrixSystem scale_transfer(const MatrixSystem& sys, cplx t) {
  MatrixSystem out = sys;
  for (Letter a = 0; a < sys.letters(); ++a) {
    for (Letter b = 0; b < sys.letters(); ++b) {
      if (sys.alphabet().inverse(a) == b) continue;
      out.set_H(b, a, t * sys.H(b, a));
    }
  }
  return out;
}

double map_residual(const MatrixSystem& from, const MatrixSystem& to, const SystemMap& j) {
  if (!(from.alphabet() == to.alphabet())) throw InputError("map_residual: alphabet mismatch");
  if (static_cast<int>(j.J.size()) != from.letters()) throw InputError("map_residual: wrong map size");
  for (Letter a = 0; a < from.letters(); ++a) {
    if (j.J[a].rows() != to.dim(a) || j.J[a].cols() != from.dim(a)) {
      throw InputError("map_residual: map has wrong shape");
    }
  }
  double worst = 0.0;
  for (Letter a = 0; a < from.letters(); ++a) {
    for (Letter b = 0; b < from.letters(); ++b) {
      Mat r = to.H(a, b) * j.J[b] - j.J[a] * from.H(a, b);
      worst = std::max(worst, spectral_norm(r));
    }
  }
  return worst;
}

SystemMap identity_map(const MatrixSystem& sys) {
  SystemMap m;
  for (Letter a = 0; a < sys.letters(); ++a) m.J.push_back(Mat::Identity(sys.dim(a), sys.dim(a)));
  return m;
}

MatrixSystem scalar_system(const Alphabet& alphabet, cplx h, double b) {
  MatrixSystem out(alphabet, std::vector<int>(static_cast<std::size_t>(alphabet.size()), 1));
  for (Letter a = 0; a < alphabet.size(); ++a) {
    out.set_B(a, Mat::Constant(1, 1, b));
    for (Letter c = 0; c < alphabet.size(); ++c) {
      if (alphabet.inverse(a) == c) continue;
      out.set_H(c, a, Mat::Constant(1, 1, h));
    }
  }
  return out;
}

MatrixSystem spherical_system(const Alphabet& alphabet, double s) {
  const double q = alphabet.branching();
  const cplx h = std::pow(cplx(q, 0.0), cplx(-0.5, s));
  return scalar_system(alphabet, h, 1.0 / alphabet.size());
}

}  // namespace mrep
