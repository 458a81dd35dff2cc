#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mrep {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Numeric policy shared by every module.
inline constexpr double kDefectTol = 1e-9;   // defect / residual acceptance
inline constexpr double kPsdTol = 1e-9;      // min eigenvalue >= -kPsdTol * |B|
inline constexpr double kRankTol = 1e-8;     // relative singular value cutoff
inline constexpr double kUnitBand = 1e-8;    // rho treated as 1 within this band

double spectral_norm(const Mat& m);

// Orthonormal basis of the column span; singular values below
// rel_tol * (largest) are dropped. Columns are normalised first so that
// tiny but genuine directions are not lost to scaling.
Mat orth(const Mat& cols, double rel_tol = kRankTol);

// Orthonormal basis of ker(m).
Mat null_space(const Mat& m, double rel_tol = kRankTol);

// Orthonormal basis of the orthogonal complement of span(basis) in C^dim.
Mat orth_complement(const Mat& basis, Eigen::Index dim);

int numeric_rank(const Mat& m, double rel_tol = kRankTol);

Mat hermitian_part(const Mat& m);
double min_eigenvalue(const Mat& hermitian);
bool is_psd(const Mat& hermitian, double rel_tol = kPsdTol);
bool is_positive_definite(const Mat& hermitian, double rel_tol = kRankTol);

// Largest principal angle residual: |(I - P_big) small| for orthonormal bases.
double span_residual(const Mat& small, const Mat& big_orthonormal);

}  // namespace mrep
