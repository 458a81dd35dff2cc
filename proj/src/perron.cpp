#include "mrep/perron.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "mrep/errors.hpp"

namespace mrep {

FormTuple apply_L(const MatrixSystem& sys, const FormTuple& forms) {
  if (static_cast<int>(forms.size()) != sys.letters()) throw InputError("apply_L: wrong tuple length");
  for (Letter a = 0; a < sys.letters(); ++a) {
    if (forms[a].rows() != sys.dim(a) || forms[a].cols() != sys.dim(a)) {
      throw InputError("apply_L: form has wrong shape");
    }
  }
  FormTuple out;
  for (Letter a = 0; a < sys.letters(); ++a) {
    Mat acc = Mat::Zero(sys.dim(a), sys.dim(a));
    for (Letter b = 0; b < sys.letters(); ++b) {
      const Mat& h = sys.H(b, a);
      if (h.size() == 0) continue;
      acc += h.adjoint() * forms[b] * h;
    }
    out.push_back(hermitian_part(acc));
  }
  return out;
}

FormTuple identity_forms(const MatrixSystem& sys) {
  FormTuple out;
  for (Letter a = 0; a < sys.letters(); ++a) out.push_back(Mat::Identity(sys.dim(a), sys.dim(a)));
  return out;
}

double tuple_norm(const FormTuple& forms) {
  double n = 0.0;
  for (const Mat& m : forms) n = std::max(n, spectral_norm(m));
  return n;
}

FormTuple tuple_axpy(cplx alpha, const FormTuple& x, const FormTuple& y) {
  FormTuple out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(alpha * x[i] + y[i]);
  return out;
}

bool tuple_is_psd(const FormTuple& forms, double rel_tol) {
  const double scale = tuple_norm(forms);
  for (const Mat& m : forms) {
    if (m.size() == 0) continue;
    if (min_eigenvalue(m) < -rel_tol * scale) return false;
  }
  return true;
}

Eigen::VectorXd vectorize(const FormTuple& forms) {
  Eigen::Index n = 0;
  for (const Mat& m : forms) n += m.rows() * m.rows();
  Eigen::VectorXd v(n);
  Eigen::Index k = 0;
  for (const Mat& m : forms) {
    const Eigen::Index d = m.rows();
    for (Eigen::Index i = 0; i < d; ++i) v(k++) = m(i, i).real();
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i + 1; j < d; ++j) {
        v(k++) = m(i, j).real();
        v(k++) = m(i, j).imag();
      }
    }
  }
  return v;
}

FormTuple devectorize(const Eigen::VectorXd& v, const std::vector<int>& dims) {
  FormTuple out;
  Eigen::Index k = 0;
  for (int d : dims) {
    Mat m = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = v(k++);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        m(i, j) = cplx(v(k), v(k + 1));
        m(j, i) = std::conj(m(i, j));
        k += 2;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

Eigen::MatrixXd assemble_L(const MatrixSystem& sys) {
  Eigen::Index n = 0;
  for (int d : sys.dims()) n += static_cast<Eigen::Index>(d) * d;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(j) = 1.0;
    m.col(j) = vectorize(apply_L(sys, devectorize(e, sys.dims())));
  }
  return m;
}

namespace {

double max_trace(const FormTuple& f) {
  double t = 0.0;
  for (const Mat& m : f) t = std::max(t, m.trace().real());
  return t;
}

FormTuple scaled(const FormTuple& f, double s) {
  FormTuple out;
  for (const Mat& m : f) out.push_back(s * m);
  return out;
}

double relative_residual(const MatrixSystem& sys, const FormTuple& f, double rho) {
  const double n = tuple_norm(f);
  if (n == 0.0) return 0.0;
  return tuple_norm(tuple_axpy(-rho, f, apply_L(sys, f))) / n;
}

// Fix sign so the total trace is positive, then accept if PSD with small residual.
std::optional<FormTuple> accept(const MatrixSystem& sys, FormTuple f, double rho, double tol) {
  double total = 0.0;
  for (Mat& m : f) {
    m = hermitian_part(m);
    total += m.trace().real();
  }
  if (total < 0.0) f = scaled(f, -1.0);
  if (tuple_norm(f) == 0.0) return std::nullopt;
  if (!tuple_is_psd(f)) return std::nullopt;
  const double mt = max_trace(f);
  if (mt <= 0.0) return std::nullopt;
  f = scaled(f, 1.0 / mt);
  if (relative_residual(sys, f, rho) > tol * std::max(1.0, rho)) return std::nullopt;
  return f;
}

}  // namespace

PerronResult pf_eigenpair(const MatrixSystem& sys, double tol) {
  int n = 0;
  for (int d : sys.dims()) n += d * d;
  if (n == 0) throw ValidationError("pf_eigenpair: all spaces are zero-dimensional");

  const Eigen::MatrixXd m = assemble_L(sys);
  const double mnorm = m.norm();

  // Nilpotent L: L^k(I) vanishes for some k <= n exactly when rho = 0,
  // because I is interior to the cone.
  {
    FormTuple x = identity_forms(sys);
    for (int k = 0; k <= n; ++k) {
      FormTuple y = apply_L(sys, x);
      if (tuple_norm(y) <= 1e-12 * std::max(mnorm, 1e-300) * tuple_norm(x) || mnorm == 0.0) {
        PerronResult r;
        r.rho = 0.0;
        r.forms = scaled(x, 1.0 / max_trace(x));
        r.residual = relative_residual(sys, r.forms, 0.0);
        r.method = "nilpotent";
        r.iterations = k;
        return r;
      }
      x = scaled(y, 1.0 / max_trace(y));
    }
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) throw ConvergenceError("pf_eigenpair: dense eigensolver failed");
  const auto& ev = es.eigenvalues();
  Eigen::Index best = 0;
  double modulus = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i).real() > ev(best).real()) best = i;
    modulus = std::max(modulus, std::abs(ev(i)));
  }
  const double rho = ev(best).real();
  if (rho < modulus * (1.0 - 1e-6)) {
    std::ostringstream os;
    os << "pf_eigenpair: largest real eigenvalue " << rho << " is below spectral radius " << modulus;
    throw ConvergenceError(os.str());
  }

  PerronResult result;
  result.rho = rho;

  // Stage 1: the eigenvector of the max-real eigenvalue.
  {
    Eigen::VectorXcd v = es.eigenvectors().col(best);
    Eigen::Index piv;
    v.cwiseAbs().maxCoeff(&piv);
    v *= std::conj(v(piv)) / std::abs(v(piv));
    if (auto f = accept(sys, devectorize(v.real(), sys.dims()), rho, tol)) {
      result.forms = *f;
      result.method = "eigenvector";
      result.residual = relative_residual(sys, result.forms, rho);
      return result;
    }
  }

  // Stage 2: spectral projection of the identity onto the rho-eigenspace
  // (the limit of the Cesaro means when rho is semisimple).
  {
    const Eigen::MatrixXd shifted = m - rho * Eigen::MatrixXd::Identity(n, n);
    auto kernel = [&](const Eigen::MatrixXd& a) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      Eigen::Index r = 0;
      const double cut = 1e-8 * std::max(1.0, mnorm);
      while (r < s.size() && s(r) > cut) ++r;
      return Eigen::MatrixXd(svd.matrixV().rightCols(a.cols() - r));
    };
    Eigen::MatrixXd right = kernel(shifted);
    Eigen::MatrixXd left = kernel(shifted.transpose());
    if (right.cols() > 0 && right.cols() == left.cols()) {
      Eigen::MatrixXd g = left.transpose() * right;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
      if (lu.isInvertible()) {
        Eigen::VectorXd id = vectorize(identity_forms(sys));
        Eigen::VectorXd p = right * lu.solve(left.transpose() * id);
        if (auto f = accept(sys, devectorize(p, sys.dims()), rho, tol)) {
          result.forms = *f;
          result.method = "spectral-projection";
          result.residual = relative_residual(sys, result.forms, rho);
          return result;
        }
      }
    }
  }

  // Stage 3: Cesaro-averaged power iteration from the identity. The shift by
  // rho removes rotation on the peripheral spectrum without moving the
  // eigenvector.
  FormTuple x = identity_forms(sys);
  FormTuple mean = scaled(x, 0.0);
  const int max_iter = 200000;
  double last = 0.0;
  for (int k = 1; k <= max_iter; ++k) {
    FormTuple y = tuple_axpy(rho, x, apply_L(sys, x));
    x = scaled(y, 1.0 / max_trace(y));
    mean = tuple_axpy(1.0, x, mean);
    if (k % 50 == 0) {
      for (const FormTuple* cand : {&x, &mean}) {
        if (auto f = accept(sys, *cand, rho, tol)) {
          result.forms = *f;
          result.method = "power-iteration";
          result.iterations = k;
          result.residual = relative_residual(sys, result.forms, rho);
          return result;
        }
      }
      last = relative_residual(sys, scaled(mean, 1.0 / max_trace(mean)), rho);
    }
  }
  std::ostringstream os;
  os << "pf_eigenpair: no PSD eigen-tuple for rho = " << rho << " after " << max_iter
     << " iterations (last residual " << last << ")";
  throw ConvergenceError(os.str());
}

MatrixSystem normalize_to_compatible(const MatrixSystem& sys, double tol) {
  PerronResult pf = pf_eigenpair(sys, tol);
  if (pf.rho <= 1e-12) throw ValidationError("normalize_to_compatible: rho = 0, system is degenerate");
  MatrixSystem out = scale_transfer(sys, cplx(1.0 / std::sqrt(pf.rho), 0.0));
  out.set_forms(pf.forms);
  const double defect = compatibility_defect(out);
  if (defect > tol) {
    std::ostringstream os;
    os << "normalize_to_compatible: defect " << defect << " after normalisation";
    throw ConvergenceError(os.str());
  }
  return out;
}

}  // namespace mrep
