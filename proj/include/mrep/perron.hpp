#pragma once

#include <string>
#include <vector>

#include "mrep/system.hpp"

namespace mrep {

// One Hermitian matrix per letter.
using FormTuple = std::vector<Mat>;

// (L F)_a = sum_b H(b,a)^* F_b H(b,a).
FormTuple apply_L(const MatrixSystem& sys, const FormTuple& forms);

FormTuple identity_forms(const MatrixSystem& sys);
double tuple_norm(const FormTuple& forms);  // max spectral norm
FormTuple tuple_axpy(cplx alpha, const FormTuple& x, const FormTuple& y);  // alpha x + y
bool tuple_is_psd(const FormTuple& forms, double rel_tol = kPsdTol);

// Real coordinates: diagonal entries, then Re/Im of the strict upper triangle,
// letter by letter. Total length sum_a dim(a)^2.
Eigen::VectorXd vectorize(const FormTuple& forms);
FormTuple devectorize(const Eigen::VectorXd& v, const std::vector<int>& dims);
// Dense real matrix of L in the coordinates above.
Eigen::MatrixXd assemble_L(const MatrixSystem& sys);

struct PerronResult {
  double rho = 0.0;
  FormTuple forms;          // PSD, max trace 1
  double residual = 0.0;    // |L F - rho F| / |F|
  std::string method;       // which stage produced the eigen-tuple
  int iterations = 0;
};

// Perron-Frobenius eigenpair of L on the cone of PSD tuples.
// Throws ValidationError on an all-zero space and ConvergenceError if no
// stage produces a PSD eigen-tuple within tol.
PerronResult pf_eigenpair(const MatrixSystem& sys, double tol = kDefectTol);

// H <- rho^{-1/2} H, B <- eigen-tuple. Throws ValidationError if rho = 0.
MatrixSystem normalize_to_compatible(const MatrixSystem& sys, double tol = kDefectTol);

}  // namespace mrep
