#include "mrep/linalg.hpp"

#include <algorithm>
#include <vector>

namespace mrep {

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

Mat orth(const Mat& cols, double rel_tol) {
  const Eigen::Index rows = cols.rows();
  std::vector<Eigen::Index> keep;
  double biggest = 0.0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) biggest = std::max(biggest, cols.col(j).norm());
  if (rows == 0 || biggest == 0.0) return Mat(rows, 0);
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    // Columns at roundoff level relative to the largest one carry no direction.
    if (cols.col(j).norm() > 1e-14 * biggest) keep.push_back(j);
  }
  if (keep.empty()) return Mat(rows, 0);
  Mat normalized(rows, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    normalized.col(static_cast<Eigen::Index>(k)) = cols.col(keep[k]) / cols.col(keep[k]).norm();
  }
  Eigen::JacobiSVD<Mat> svd(normalized, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Mat::Identity(n, n);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat orth_complement(const Mat& basis, Eigen::Index dim) {
  if (basis.cols() == 0) return Mat::Identity(dim, dim);
  if (dim == 0) return Mat(0, 0);
  return null_space(basis.adjoint(), kRankTol);
}

int numeric_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return r;
}

Mat hermitian_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const Mat& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Mat& hermitian, double rel_tol) {
  if (hermitian.size() == 0) return true;
  const double scale = spectral_norm(hermitian);
  return min_eigenvalue(hermitian) >= -rel_tol * scale;
}

bool is_positive_definite(const Mat& hermitian, double rel_tol) {
  if (hermitian.size() == 0) return true;
  const double scale = spectral_norm(hermitian);
  return scale > 0.0 && min_eigenvalue(hermitian) > rel_tol * scale;
}

double span_residual(const Mat& small, const Mat& big_orthonormal) {
  if (small.cols() == 0) return 0.0;
  if (big_orthonormal.cols() == 0) return spectral_norm(small);
  Mat r = small - big_orthonormal * (big_orthonormal.adjoint() * small);
  return spectral_norm(r);
}

}  // namespace mrep
