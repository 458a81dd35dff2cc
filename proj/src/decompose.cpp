#include "mrep/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mrep/errors.hpp"

namespace mrep {

namespace {

double max_form_norm(const MatrixSystem& sys) {
  double s = 0.0;
  for (Letter a = 0; a < sys.letters(); ++a) s = std::max(s, spectral_norm(sys.B(a)));
  return s;
}

Mat random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> nd;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  }
  return m;
}

cplx random_scalar(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  return {nd(rng), nd(rng)};
}

bool is_proper(const MatrixSystem& sys, const Subsystem& w) {
  return !w.is_zero() && !is_full(sys, w);
}

// Block layout of V = sum_a V_a.
struct Layout {
  std::vector<Eigen::Index> offset;
  Eigen::Index total = 0;

  explicit Layout(const MatrixSystem& sys) {
    for (Letter a = 0; a < sys.letters(); ++a) {
      offset.push_back(total);
      total += sys.dim(a);
    }
  }

  std::vector<Mat> split(const MatrixSystem& sys, const Mat& cols) const {
    std::vector<Mat> out;
    for (Letter a = 0; a < sys.letters(); ++a) out.push_back(cols.middleRows(offset[a], sys.dim(a)));
    return out;
  }
};

// Random element of span{idempotents, arrows} acting on V.
Mat random_generator(const MatrixSystem& sys, const Layout& lay, std::mt19937_64& rng) {
  Mat g = Mat::Zero(lay.total, lay.total);
  for (Letter a = 0; a < sys.letters(); ++a) {
    const cplx s = random_scalar(rng);
    for (int i = 0; i < sys.dim(a); ++i) g(lay.offset[a] + i, lay.offset[a] + i) += s;
    for (Letter b = 0; b < sys.letters(); ++b) {
      if (sys.dim(a) == 0 || sys.dim(b) == 0) continue;
      g.block(lay.offset[b], lay.offset[a], sys.dim(b), sys.dim(a)) += random_scalar(rng) * sys.H(b, a);
    }
  }
  return g;
}

std::vector<Mat> single_seed(const MatrixSystem& sys, const Layout& lay, const Vec& v) {
  return lay.split(sys, Mat(v));
}

}  // namespace

StripResult strip_null_directions(const MatrixSystem& sys) {
  const double scale = max_form_norm(sys);
  Subsystem nulls;
  Subsystem kept;
  for (Letter a = 0; a < sys.letters(); ++a) {
    const int d = sys.dim(a);
    if (d == 0) {
      nulls.basis.push_back(Mat(0, 0));
      kept.basis.push_back(Mat(0, 0));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(sys.B(a)));
    const auto& ev = es.eigenvalues();
    int k = 0;
    while (k < d && ev(k) <= kRankTol * scale) ++k;
    nulls.basis.push_back(es.eigenvectors().leftCols(k));
    kept.basis.push_back(es.eigenvectors().rightCols(d - k));
  }
  const double res = invariance_residual(sys, nulls);
  if (res > 1e-6) {
    std::ostringstream os;
    os << "strip_null_directions: null space of B is not invariant (residual " << res
       << "); the system is not compatible";
    throw InternalError(os.str());
  }
  return StripResult{restrict_to(sys, kept), nulls, kept};
}

Subsystem closure_subsystem(const MatrixSystem& sys, const std::vector<Mat>& seeds) {
  if (static_cast<int>(seeds.size()) != sys.letters()) throw InputError("closure: wrong seed count");
  Subsystem w;
  for (Letter a = 0; a < sys.letters(); ++a) {
    if (seeds[a].rows() != sys.dim(a)) throw InputError("closure: seed length mismatch");
    w.basis.push_back(orth(seeds[a]));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (Letter b = 0; b < sys.letters(); ++b) {
      if (static_cast<int>(w.basis[b].cols()) == sys.dim(b)) continue;
      Eigen::Index cols = w.basis[b].cols();
      for (Letter a = 0; a < sys.letters(); ++a) cols += w.basis[a].cols();
      Mat all(sys.dim(b), cols);
      Eigen::Index c = 0;
      all.middleCols(c, w.basis[b].cols()) = w.basis[b];
      c += w.basis[b].cols();
      for (Letter a = 0; a < sys.letters(); ++a) {
        all.middleCols(c, w.basis[a].cols()) = sys.H(b, a) * w.basis[a];
        c += w.basis[a].cols();
      }
      Mat next = orth(all);
      if (next.cols() > w.basis[b].cols()) {
        w.basis[b] = next;
        changed = true;
      }
    }
  }
  return w;
}

std::optional<Subsystem> find_proper_invariant(const MatrixSystem& sys, int max_trials,
                                               std::uint64_t seed) {
  const Layout lay(sys);
  if (lay.total <= 1) return std::nullopt;
  const MatrixSystem dual = adjoint_system(sys);
  std::mt19937_64 rng(seed);

  // Subsystem generated by v on the primal side, or the annihilator of the
  // subsystem v generates on the dual side.
  auto primal = [&](const Vec& v) -> std::optional<Subsystem> {
    Subsystem w = closure_subsystem(sys, single_seed(sys, lay, v));
    if (is_proper(sys, w)) return w;
    return std::nullopt;
  };
  auto dual_side = [&](const Vec& v) -> std::optional<Subsystem> {
    Subsystem u = closure_subsystem(dual, single_seed(sys, lay, v));
    if (is_proper(dual, u)) return annihilator(sys, u);
    return std::nullopt;
  };

  for (int t = 0; t < max_trials; ++t) {
    // A single letter's vector is the cheapest probe; it catches zero maps.
    {
      std::vector<Letter> nonzero;
      for (Letter a = 0; a < sys.letters(); ++a) {
        if (sys.dim(a) > 0) nonzero.push_back(a);
      }
      const Letter a = nonzero[static_cast<std::size_t>(rng() % nonzero.size())];
      Vec v = Vec::Zero(lay.total);
      v.segment(lay.offset[a], sys.dim(a)) = random_matrix(rng, sys.dim(a), 1);
      if (auto w = primal(v)) return w;
      if (auto w = dual_side(v)) return w;
    }

    const Mat g1 = random_generator(sys, lay, rng);
    const Mat g2 = random_generator(sys, lay, rng);
    const Mat theta = g1 * g2 + random_scalar(rng) * g2 + random_scalar(rng) * g1 * g1;
    Eigen::ComplexEigenSolver<Mat> ces(theta, false);
    if (ces.info() != Eigen::Success) continue;
    const auto& ev = ces.eigenvalues();
    const cplx lambda = ev(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(ev.size())));
    const Mat shifted = theta - lambda * Mat::Identity(lay.total, lay.total);
    const Mat ker = null_space(shifted);
    const Mat coker = null_space(shifted.adjoint());
    if (ker.cols() == 0 || coker.cols() == 0) continue;

    for (Eigen::Index j = 0; j < ker.cols(); ++j) {
      if (auto w = primal(ker.col(j))) return w;
    }
    if (ker.cols() > 1) {
      if (auto w = primal(ker * random_matrix(rng, ker.cols(), 1))) return w;
    }
    for (Eigen::Index j = 0; j < coker.cols(); ++j) {
      if (auto w = dual_side(coker.col(j))) return w;
    }
    if (coker.cols() > 1) {
      if (auto w = dual_side(coker * random_matrix(rng, coker.cols(), 1))) return w;
    }
    // Every submodule meets ker(theta - lambda) or is annihilated by a vector of
    // the dual kernel; with a one-dimensional kernel both generate everything,
    // so no proper submodule exists.
    if (ker.cols() == 1 && coker.cols() == 1) return std::nullopt;
  }
  return std::nullopt;
}

bool is_irreducible(const MatrixSystem& sys, int max_trials, std::uint64_t seed) {
  if (sys.total_dim() == 0) return false;
  return !find_proper_invariant(sys, max_trials, seed).has_value();
}

Subsystem maximal_invariant(const MatrixSystem& sys, int max_trials, std::uint64_t seed) {
  auto first = find_proper_invariant(sys, max_trials, seed);
  if (!first) throw ValidationError("maximal_invariant: no proper invariant subsystem found");

  // U is invariant for the adjoint system; shrink it to a minimal one.
  const MatrixSystem dual = adjoint_system(sys);
  Subsystem u = annihilator(sys, *first);
  std::uint64_t s = seed;
  for (;;) {
    const MatrixSystem restricted = restrict_to(dual, u);
    auto inner = find_proper_invariant(restricted, max_trials, ++s);
    if (!inner) break;
    for (Letter a = 0; a < sys.letters(); ++a) u.basis[a] = orth(u.basis[a] * inner->basis[a]);
  }
  Subsystem w = annihilator(sys, u);
  if (!is_invariant_subsystem(sys, w, 1e-6)) {
    throw InternalError("maximal_invariant: annihilator is not invariant");
  }
  return w;
}

double split_lambda(const MatrixSystem& sys, const Subsystem& quotient_coords,
                    const FormTuple& quotient_forms) {
  double lambda = std::numeric_limits<double>::infinity();
  for (Letter a = 0; a < sys.letters(); ++a) {
    const Mat& c = quotient_coords.basis[a];
    if (c.cols() == 0) continue;
    // mu_max = largest eigenvalue of X K X with X = Bq^{1/2}, K = C^* B^{-1} C.
    const Mat k = hermitian_part(c.adjoint() * sys.B(a).ldlt().solve(c));
    Eigen::SelfAdjointEigenSolver<Mat> sq(hermitian_part(quotient_forms[a]));
    Eigen::VectorXd root = sq.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Mat x = sq.eigenvectors() * root.asDiagonal() * sq.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(x * k * x), Eigen::EigenvaluesOnly);
    const double mu = es.eigenvalues().maxCoeff();
    if (mu <= 0.0) continue;
    lambda = std::min(lambda, 1.0 / mu);
  }
  if (!std::isfinite(lambda)) throw InternalError("split_lambda: quotient forms vanish");
  return lambda;
}

namespace {

SystemMap compose(const SystemMap& outer, const Subsystem& inner) {
  SystemMap m;
  for (std::size_t a = 0; a < outer.J.size(); ++a) m.J.push_back(outer.J[a] * inner.basis[a]);
  return m;
}

struct Recursion {
  const DecomposeOptions& opts;
  Decomposition& out;

  void run(const MatrixSystem& sys, const SystemMap& embed) {
    if (sys.total_dim() == 0) return;
    if (!find_proper_invariant(sys, opts.trials, opts.seed)) {
      out.components.push_back(Component{sys, embed, "irreducible", 1.0});
      return;
    }
    const Subsystem w = maximal_invariant(sys, opts.trials, opts.seed);
    const Quotient q = quotient_system(sys, w);
    const PerronResult pf = pf_eigenpair(q.system);

    DecomposeStep step;
    step.dims = sys.dims();
    step.quotient_dims = q.system.dims();
    step.quotient_rho = pf.rho;

    if (pf.rho < 1.0 - kUnitBand) {
      step.action = "prune";
      out.steps.push_back(step);
      run(restrict_to(sys, w), compose(embed, w));
      return;
    }
    if (pf.rho > 1.0 + kUnitBand) {
      std::ostringstream os;
      os << "decompose: quotient has rho = " << pf.rho << " > 1";
      throw InternalError(os.str());
    }

    const double lambda = split_lambda(sys, q.complement, pf.forms);
    step.action = "split";
    step.lambda = lambda;
    out.steps.push_back(step);

    const double scale = std::max(1.0, max_form_norm(sys));
    Subsystem w0;
    std::vector<Mat> pulled;
    for (Letter a = 0; a < sys.letters(); ++a) {
      const Mat& c = q.complement.basis[a];
      Mat p = hermitian_part(c * pf.forms[a] * c.adjoint());
      const Mat gap = hermitian_part(sys.B(a) - lambda * p);
      const Eigen::Index k = c.cols();
      Eigen::SelfAdjointEigenSolver<Mat> es(gap);
      if (k > 0 && std::abs(es.eigenvalues()(k - 1)) > 1e-7 * scale) {
        std::ostringstream os;
        os << "decompose: B - lambda_0 B~ has only " << k - 1 << " near-zero directions at letter "
           << sys.alphabet().name(a) << " (next eigenvalue " << es.eigenvalues()(k - 1) << ")";
        throw InternalError(os.str());
      }
      w0.basis.push_back(es.eigenvectors().leftCols(k));
      pulled.push_back(std::move(p));
    }

    MatrixSystem split = restrict_to(sys, w0);
    FormTuple split_forms;
    for (Letter a = 0; a < sys.letters(); ++a) {
      split_forms.push_back(hermitian_part(lambda * w0.basis[a].adjoint() * pulled[a] * w0.basis[a]));
    }
    split.set_forms(split_forms);
    out.components.push_back(Component{split, compose(embed, w0), "split", lambda});

    MatrixSystem rest = restrict_to(sys, w);
    FormTuple rest_forms;
    for (Letter a = 0; a < sys.letters(); ++a) {
      const Mat& wa = w.basis[a];
      rest_forms.push_back(hermitian_part(wa.adjoint() * (sys.B(a) - lambda * pulled[a]) * wa));
    }
    rest.set_forms(rest_forms);
    run(rest, compose(embed, w));
  }
};

}  // namespace

Decomposition decompose(const MatrixSystem& sys, const DecomposeOptions& opts) {
  sys.validate();
  const double defect = compatibility_defect(sys);
  if (defect > opts.compat_tol * std::max(1.0, max_form_norm(sys))) {
    std::ostringstream os;
    os << "decompose: input is not compatible (defect " << defect << ")";
    throw ValidationError(os.str());
  }
  Decomposition out;
  const StripResult strip = strip_null_directions(sys);
  out.stripped = strip.nulls;
  Recursion rec{opts, out};
  rec.run(strip.system, SystemMap{strip.kept.basis});
  return out;
}

}  // namespace mrep
