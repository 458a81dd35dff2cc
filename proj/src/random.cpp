#include "mrep/random.hpp"

#include "mrep/perron.hpp"

namespace mrep {

Mat random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> nd;
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(nd(rng), nd(rng));
  }
  return m;
}

Mat random_unitary(Rng& rng, Eigen::Index n) {
  if (n == 0) return Mat(0, 0);
  Eigen::HouseholderQR<Mat> qr(random_gaussian(rng, n, n));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mod = std::abs(r(i, i));
    if (mod > 0.0) q.col(i) *= r(i, i) / mod;
  }
  return q;
}

SystemMap random_unitary_map(Rng& rng, const MatrixSystem& sys) {
  SystemMap m;
  for (Letter a = 0; a < sys.letters(); ++a) m.J.push_back(random_unitary(rng, sys.dim(a)));
  return m;
}

MatrixSystem random_system(Rng& rng, const Alphabet& alphabet, const std::vector<int>& dims) {
  MatrixSystem sys(alphabet, dims);
  for (Letter a = 0; a < alphabet.size(); ++a) {
    for (Letter b = 0; b < alphabet.size(); ++b) {
      if (alphabet.inverse(a) == b) continue;
      sys.set_H(b, a, random_gaussian(rng, dims[b], dims[a]));
    }
  }
  return sys;
}

MatrixSystem random_compatible_system(Rng& rng, const Alphabet& alphabet, const std::vector<int>& dims) {
  return normalize_to_compatible(random_system(rng, alphabet, dims));
}

Word random_word(Rng& rng, const Alphabet& alphabet, int length) {
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) {
    const int choices = letters.empty() ? alphabet.size() : alphabet.branching();
    Letter l = static_cast<Letter>(std::uniform_int_distribution<int>(0, choices - 1)(rng));
    if (!letters.empty() && l >= alphabet.inverse(letters.back())) ++l;
    letters.push_back(l);
  }
  return Word(std::move(letters));
}

MultFunc random_function(Rng& rng, std::shared_ptr<const MatrixSystem> sys, int depth) {
  MultFunc f(std::move(sys), depth);
  for (std::size_t i = 0; i < f.sphere_count(); ++i) {
    f.set_value_at(i, random_gaussian(rng, f.value_at(i).size(), 1));
  }
  return f;
}

}  // namespace mrep
