#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrep/perron.hpp"
#include "mrep/system.hpp"

namespace mrep {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ull;
inline constexpr int kDefaultTrials = 50;

struct StripResult {
  MatrixSystem system;  // compression to the complement of the null directions
  Subsystem nulls;      // ker B_a
  Subsystem kept;       // orthonormal bases of (ker B_a)^perp, the output coordinates
};

// Removes ker B_a, which is invariant when the input is compatible.
// Throws InternalError if the null directions are not invariant.
StripResult strip_null_directions(const MatrixSystem& sys);

// Smallest invariant subsystem containing the seed vectors (columns of seeds[a]).
Subsystem closure_subsystem(const MatrixSystem& sys, const std::vector<Mat>& seeds);

// Randomised search for a proper nonzero invariant subsystem: closures of
// random vectors, closures in the adjoint system, and kernel vectors of
// random path-algebra elements. A kernel of dimension one whose vector
// generates everything on both sides certifies irreducibility.
std::optional<Subsystem> find_proper_invariant(const MatrixSystem& sys,
                                               int max_trials = kDefaultTrials,
                                               std::uint64_t seed = kDefaultSeed);

bool is_irreducible(const MatrixSystem& sys, int max_trials = kDefaultTrials,
                    std::uint64_t seed = kDefaultSeed);

// Proper invariant W with irreducible quotient: the annihilator of a minimal
// invariant subsystem of the adjoint system. Throws ValidationError when no
// proper invariant subsystem is found.
Subsystem maximal_invariant(const MatrixSystem& sys, int max_trials = kDefaultTrials,
                            std::uint64_t seed = kDefaultSeed);

struct Component {
  MatrixSystem system;
  // J_a: component coordinates -> input V_a. Intertwines H exactly when the
  // input had no B-null directions, and modulo them otherwise.
  SystemMap embedding;
  std::string origin;    // "irreducible" or "split"
  double lambda = 1.0;   // lambda_0 for split components
};

struct DecomposeOptions {
  int trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  double compat_tol = 1e-8;
};

struct DecomposeStep {
  std::vector<int> dims;           // dims of the system being split
  std::vector<int> quotient_dims;  // dims of the irreducible quotient
  double quotient_rho = 0.0;
  std::string action;  // "prune" (rho < 1) or "split" (rho = 1)
  double lambda = 0.0;
};

struct Decomposition {
  std::vector<Component> components;
  std::vector<DecomposeStep> steps;
  Subsystem stripped;  // null directions removed up front
};

// Orthogonal decomposition into irreducible compatible systems.
Decomposition decompose(const MatrixSystem& sys, const DecomposeOptions& opts = {});

// sup{lambda : B - lambda * pulled-back quotient form >= 0}, used by decompose;
// exposed for testing maximality.
double split_lambda(const MatrixSystem& sys, const Subsystem& quotient_coords,
                    const FormTuple& quotient_forms);

}  // namespace mrep
