// Acceptance suite: one PASS/FAIL line per criterion, tolerances as pinned in
// the project requirements. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrep/changegen.hpp"
#include "mrep/decompose.hpp"
#include "mrep/perron.hpp"
#include "mrep/random.hpp"
#include "mrep/subgroup.hpp"
#include "mrep/transport.hpp"
#include "support.hpp"

using namespace mrep;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::set<Word> as_set(const std::vector<Word>& ws) { return {ws.begin(), ws.end()}; }

FundamentalSubtree index2() {
  const Alphabet al = oracle::free2();
  return FundamentalSubtree(CosetAutomaton::from_generators(al, {al.parse("b"), al.parse("abA"), al.parse("aa")}));
}

FundamentalSubtree index3() {
  const Alphabet al = oracle::free2();
  return FundamentalSubtree(
      CosetAutomaton::from_permutations(al, {{al.letter("a"), {1, 2, 0}}, {al.letter("b"), {0, 2, 1}}}));
}

// 1. Spherical fixture: defect <= 1e-12 and rho = 1 +- 1e-9 for s in {0, 0.3}.
void spherical_fixture(Verdict& v) {
  for (double s : {0.0, 0.3}) {
    const MatrixSystem sys = spherical_system(oracle::free2(), s);
    const double defect = compatibility_defect(sys);
    const double rho = pf_eigenpair(sys).rho;
    v.detail << "s=" << s << ": defect " << defect << ", rho-1 " << rho - 1.0 << "; ";
    v.require(defect <= 1e-12, "defect");
    v.require(std::abs(rho - 1.0) <= 1e-9, "rho");
  }
}

// 2. Perron eigenvalue against the dense spectral radius on 50 random systems.
void perron_oracle(Verdict& v) {
  Rng rng(20240002);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::vector<int> dims;
    for (int a = 0; a < 4; ++a) dims.push_back(1 + static_cast<int>(rng() % 3));
    const MatrixSystem s = random_system(rng, oracle::free2(), dims);
    worst = std::max(worst, std::abs(pf_eigenpair(s).rho - oracle::dense_spectral_radius(s)));
  }
  v.detail << "max |rho - oracle| " << worst;
  v.require(worst <= 1e-8, "rho mismatch");
}

// 3. The change of generators alpha = a, beta = ab.
void change_of_generators_example(Verdict& v) {
  const Alphabet src = oracle::greek2();
  const Alphabet tgt = oracle::free2();
  const GeneratorMap gm(src, tgt, {tgt.parse("a"), tgt.parse("ab"), tgt.parse("A"), tgt.parse("BA")});
  const auto want = [&](std::initializer_list<const char*> ws) {
    std::set<Word> out;
    for (const char* w : ws) out.insert(src.parse(w));
    return out;
  };
  v.require(as_set(compute_Y(gm, tgt.parse("a")).words()) == want({"alpha", "beta"}), "Y(a)");
  v.require(as_set(compute_Y(gm, tgt.parse("b")).words()) == want({"ALPHA.beta"}), "Y(b)");
  v.require(as_set(compute_Y(gm, tgt.parse("A")).words()) == want({"ALPHA.ALPHA", "ALPHA.BETA"}), "Y(a^-1)");
  v.require(as_set(compute_Y(gm, tgt.parse("B")).words()) == want({"BETA"}), "Y(b^-1)");

  const Transported t = transport_system(gm, spherical_system(src, 0.0));
  const MatrixSystem& sys = *t.system;
  v.require(sys.dims() == std::vector<int>{2, 1, 2, 1}, "dims (a,b,a^-1,b^-1) = (2,1,2,1)");
  const double defect = compatibility_defect(sys);
  v.detail << "defect " << defect << "; ";
  v.require(defect <= 1e-8, "transported defect");

  // The (1,1) span in V_a, V_{a^-1} together with V_b, V_{b^-1}.
  std::vector<Mat> span(4);
  for (Letter c = 0; c < 4; ++c) span[c] = sys.dim(c) == 2 ? Mat(Mat::Ones(2, 1)) : Mat(Mat::Identity(1, 1));
  const Subsystem w11 = make_subsystem(sys, span);
  v.require(is_invariant_subsystem(sys, w11), "(1,1) span invariant");
  const Quotient q = quotient_system(sys, w11);
  const double rho_q = pf_eigenpair(q.system).rho;
  v.detail << "quotient dims (" << q.system.dim(0) << "," << q.system.dim(1) << "," << q.system.dim(2) << ","
           << q.system.dim(3) << "), quotient rho " << rho_q << "; ";
  v.require(q.system.dims() == std::vector<int>{1, 0, 1, 0}, "quotient dims");
  v.require(std::abs(rho_q) <= 1e-9, "quotient rho");

  // maximal_invariant contains the (1,1) span and its quotient also has rho 0.
  const Subsystem wmax = maximal_invariant(sys);
  bool contains = true;
  for (Letter c = 0; c < 4; ++c) {
    if (w11.basis[c].cols() > 0) contains = contains && span_residual(w11.basis[c], wmax.basis[c]) <= 1e-9;
  }
  v.require(contains, "maximal invariant contains the (1,1) span");
  v.require(pf_eigenpair(quotient_system(sys, wmax).system).rho <= 1e-9, "maximal quotient rho");

  // Decomposition keeps exactly the (1,1) span.
  const Decomposition d = decompose(sys);
  v.require(d.components.size() == 1, "one component");
  if (d.components.size() == 1) {
    const Subsystem img = make_subsystem(sys, d.components[0].embedding.J);
    bool same = true;
    for (Letter c = 0; c < 4; ++c) {
      same = same && img.basis[c].cols() == w11.basis[c].cols() && span_residual(img.basis[c], w11.basis[c]) <= 1e-9;
    }
    v.require(same, "component spans the (1,1) subsystem");
  }
  for (const DecomposeStep& s : d.steps) v.require(s.action == "prune" && s.quotient_rho <= 1e-9, "pruned at rho 0");
}

// 4. Translation and partition identities on 10 random Nielsen maps.
void partition_identities(Verdict& v) {
  Rng rng(20240004);
  int pairs = 0;
  for (int k = 0; k < 10; ++k) {
    const GeneratorMap gm = oracle::random_nielsen_map(rng, 4 + k);
    const Alphabet& src = gm.source();
    const Alphabet& tgt = gm.target();
    for (Letter a = 0; a < tgt.size(); ++a) {
      const Word wa = tgt.word({a});
      std::set<Word> from_b;
      for (Letter b = 0; b < tgt.size(); ++b) {
        if (tgt.inverse(a) == b) continue;
        std::set<Word> translated;
        for (const Word& z : compute_Y(gm, tgt.word({b})).words()) {
          const Word az = src.multiply(gm.contract(wa), z);
          translated.insert(az);
          from_b.insert(oracle::first_inclusion(gm, az, wa, 6));
        }
        v.require(translated == as_set(compute_Y(gm, tgt.word({a, b})).words()), "a Y(b) = Y(ab)");
        ++pairs;
      }
      v.require(from_b == as_set(compute_Y(gm, wa).words()), "Y(a) as a union over b");
    }
  }
  v.detail << pairs << " letter pairs on 10 maps";
}

// 5. Subtree norm identities on 100 random pairs.
void norm_identities(Verdict& v) {
  Rng rng(20240005);
  const Alphabet al = oracle::free2();
  double worst_tree = 0.0;
  double worst_based = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<int> dims;
    for (int a = 0; a < 4; ++a) dims.push_back(1 + static_cast<int>(rng() % 3));
    const auto sys = std::make_shared<const MatrixSystem>(random_compatible_system(rng, al, dims));
    const int depth = 1 + k % 3;
    const MultFunc f = random_function(rng, sys, depth);
    const FiniteSubtree tree = oracle::random_complete_subtree(rng, al, depth, 5, 12);
    const double n = norm2(f);
    worst_tree = std::max({worst_tree, std::abs(norm_via_subtree(f, tree) - n) / n,
                           std::abs(oracle::terminal_sum(f, tree) - n) / n});

    const Word x = random_word(rng, al, 1 + k % 4);
    const Vec vec = random_gaussian(rng, sys->dim(x.back()), 1);
    const MultFunc mu = shadow(sys, x, vec);
    const FiniteSubtree based = oracle::random_based_subtree(rng, al, x, 5 - static_cast<int>(x.size()) + 1, 8);
    const double lhs = oracle::form_norm2(*sys, x.back(), vec);
    worst_based = std::max(worst_based, std::abs(based_terminal_norm(mu, based) - lhs) / lhs);
  }
  v.detail << "subtree rel err " << worst_tree << ", based rel err " << worst_based;
  v.require(worst_tree <= 1e-9, "complete-subtree norm");
  v.require(worst_based <= 1e-9, "based-subtree identity");
}

// 6. Unitarity of the action on 100 random (x, f), |x| <= 4.
void unitarity(Verdict& v) {
  Rng rng(20240006);
  const Alphabet al = oracle::free2();
  const auto sys = std::make_shared<const MatrixSystem>(random_compatible_system(rng, al, {2, 3, 1, 2}));
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const MultFunc f = random_function(rng, sys, 1 + k % 3);
    const Word x = random_word(rng, al, k % 5);
    worst = std::max(worst, std::abs(norm2(act(x, f)) - norm2(f)) / norm2(f));
  }
  v.detail << "max rel norm defect " << worst;
  v.require(worst <= 1e-9, "unitarity");
}

// 7. Decomposition round trip.
void decomposition_round_trip(Verdict& v) {
  Rng rng(20240007);
  const Alphabet al = oracle::free2();
  int instances = 0;
  for (int k = 0; k < 8; ++k) {
    const int parts = 2 + k % 2;
    std::vector<MatrixSystem> constituents;
    std::vector<std::vector<int>> want;
    for (int p = 0; p < parts; ++p) {
      std::vector<int> dims;
      for (int a = 0; a < 4; ++a) dims.push_back(1 + static_cast<int>(rng() % 2));
      constituents.push_back(random_compatible_system(rng, al, dims));
      v.require(is_irreducible(constituents.back()), "constituent irreducible");
      want.push_back(dims);
    }
    const MatrixSystem sum = oracle::conjugated_sum(rng, constituents);
    const Decomposition d = decompose(sum);
    std::vector<std::vector<int>> got;
    for (const Component& c : d.components) {
      got.push_back(c.system.dims());
      v.require(compatibility_defect(c.system) <= 1e-8, "component defect");
      v.require(is_irreducible(c.system, 50, 0x1234 + static_cast<std::uint64_t>(k)), "component irreducible");
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    v.require(got == want, "dimension multisets");
    ++instances;
  }
  v.detail << instances << " sums of 2-3 constituents";
}

// 8. Schreier machinery for the index-2 and index-3 fixtures.
void schreier(Verdict& v) {
  for (const FundamentalSubtree& fs : {index2(), index3()}) {
    const Alphabet& al = fs.alphabet();
    const int n = fs.index();
    v.require(static_cast<int>(fs.D().size()) == n, "|D| = index");
    v.require(fs.subgroup_alphabet().size() / 2 == 1 + n * (al.size() / 2 - 1), "rank identity");
    const FiniteSubtree dp = fs.complete_D();
    v.require(dp.is_complete(), "D' complete");
    std::set<Word> xs;
    for (Letter c = 0; c < fs.subgroup_alphabet().size(); ++c) xs.insert(fs.generator(c).x);
    v.require(as_set(dp.terminals()) == xs, "terminals of D' are the x(a')");
    v.require(as_set(dp.interior()) == as_set(fs.D()), "interior of D' is D");

    const auto ball = al.ball_words(Word(), 6);
    std::set<std::pair<Word, Word>> pairs;
    bool ok = true;
    for (const Word& x : ball) {
      const auto f = fs.decompose_left(x);
      ok = ok && fs.in_D(f.u) && fs.automaton().contains(f.gamma) && al.multiply(f.gamma, f.u) == x &&
           fs.expand(f.gamma_letters) == f.gamma;
      pairs.insert({f.gamma, f.u});
    }
    v.require(ok && pairs.size() == ball.size(), "disjoint cover of ball(e,6)");
    v.detail << "index " << n << ": |D| " << fs.D().size() << ", |A'| " << fs.subgroup_alphabet().size()
             << ", ball " << ball.size() << "; ";
  }
}

// 9. Restriction and induction.
void restriction_induction(Verdict& v) {
  Rng rng(20240009);
  double worst_res = 0.0;
  double worst_ind = 0.0;
  for (const FundamentalSubtree& fs : {index2(), index3()}) {
    const Alphabet& al = fs.alphabet();
    const Alphabet& sub = fs.subgroup_alphabet();
    const auto sys = std::make_shared<const MatrixSystem>(random_compatible_system(rng, al, {2, 1, 2, 1}));
    const auto res = std::make_shared<const MatrixSystem>(restrict_system(*sys, fs));
    v.require(compatibility_defect(*res) <= 1e-8, "restricted defect");
    for (int k = 0; k < 20; ++k) {
      const MultFunc f = random_function(rng, sys, 1 + k % 3);
      worst_res = std::max(worst_res, std::abs(norm2(restrict_function(res, fs, f)) - norm2(f)) / norm2(f));
    }

    std::vector<int> dims;
    for (Letter c = 0; c < sub.size(); ++c) dims.push_back(1 + c % 2);
    const auto s = std::make_shared<const MatrixSystem>(random_compatible_system(rng, sub, dims));
    const Induced ind = induce_system(*s, fs);
    v.require(compatibility_defect(*ind.system) <= 1e-8, "induced defect");
    v.require(ind.system->total_dim() == fs.index() * s->total_dim(), "dimension law");
    for (int k = 0; k < 20; ++k) {
      InducedFamily fam;
      for (std::size_t u = 0; u < fs.D().size(); ++u) fam.push_back(random_function(rng, s, 1 + (k + u) % 2));
      worst_ind = std::max(worst_ind, std::abs(norm2(induce_function(ind, fs, fam)) - family_norm2(fam)) /
                                          family_norm2(fam));
    }

    for (const Word& z : fs.D()) {
      for (int n = static_cast<int>(z.size()) + 1; n <= 4; ++n) {
        const Truncation t = truncation_subtree(fs, z, n);
        v.require(t.tree.is_complete(), "truncation subtree complete");
        v.require(as_set(t.tree.terminals()) == as_set(t.terminals), "truncation terminals");
        v.require(t.terminals == truncation_terminals_direct(fs, z, n), "terminal characterization");
      }
    }
  }
  // The spherical fixture through the index-2 subgroup: dims 4/2/4/2.
  const FundamentalSubtree fs = index2();
  const Induced sph = induce_system(spherical_system(fs.subgroup_alphabet(), 0.0), fs);
  v.require(sph.system->dims() == std::vector<int>{4, 2, 4, 2}, "induced spherical dims");
  v.detail << "restriction rel err " << worst_res << ", induction rel err " << worst_ind;
  v.require(worst_res <= 1e-8, "restriction unitarity");
  v.require(worst_ind <= 1e-8, "induction unitarity");
}

// 10. Restrict, induce back, decompose.
void end_to_end(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const FundamentalSubtree fs = index2();
  const MatrixSystem sph = spherical_system(fs.alphabet(), 0.0);
  v.require(compatibility_defect(sph) <= 1e-8, "input defect");
  const MatrixSystem res = restrict_system(sph, fs);
  v.require(compatibility_defect(res) <= 1e-8, "restricted defect");
  const Induced ind = induce_system(res, fs);
  v.require(compatibility_defect(*ind.system) <= 1e-8, "induced defect");
  const Decomposition d = decompose(*ind.system);
  for (const Component& c : d.components) v.require(compatibility_defect(c.system) <= 1e-8, "component defect");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.detail << d.components.size() << " components (";
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const auto& dims = d.components[i].system.dims();
    v.detail << (i ? " " : "") << dims[0] << "/" << dims[1] << "/" << dims[2] << "/" << dims[3];
  }
  v.detail << "), " << secs << " s";
  v.require(!d.components.empty(), "nonempty decomposition");
  v.require(secs <= 60.0, "runtime");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"spherical fixture compatibility", spherical_fixture},
      {"Perron eigenvalue vs dense oracle", perron_oracle},
      {"change of generators example", change_of_generators_example},
      {"partition identities", partition_identities},
      {"norm identities", norm_identities},
      {"unitarity of the action", unitarity},
      {"decomposition round trip", decomposition_round_trip},
      {"Schreier machinery", schreier},
      {"restriction and induction", restriction_induction},
      {"end to end", end_to_end},
  };
  int failures = 0;
  int i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    Verdict v;
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", i, name, v.detail.str().c_str());
  }
  return failures;
}
