#pragma once

#include <memory>
#include <random>
#include <vector>

#include "mrep/multfunc.hpp"
#include "mrep/system.hpp"

namespace mrep {

using Rng = std::mt19937_64;

// Entries with independent standard normal real and imaginary parts.
Mat random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
// Haar-distributed, via QR with the phases of R fixed.
Mat random_unitary(Rng& rng, Eigen::Index n);
SystemMap random_unitary_map(Rng& rng, const MatrixSystem& sys);

// Gaussian H (zero where ab = e), B = 0.
MatrixSystem random_system(Rng& rng, const Alphabet& alphabet, const std::vector<int>& dims);
// Gaussian H rescaled by its Perron eigenvalue, B the Perron forms.
MatrixSystem random_compatible_system(Rng& rng, const Alphabet& alphabet, const std::vector<int>& dims);

// Uniform reduced word of the given length.
Word random_word(Rng& rng, const Alphabet& alphabet, int length);
// Gaussian sphere values at the given depth.
MultFunc random_function(Rng& rng, std::shared_ptr<const MatrixSystem> sys, int depth);

}  // namespace mrep
